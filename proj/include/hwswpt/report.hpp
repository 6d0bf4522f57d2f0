#pragma once

#include <vector>

#include "hwswpt/curve.hpp"
#include "hwswpt/hw_model.hpp"
#include "hwswpt/pricers.hpp"
#include "hwswpt/swaption.hpp"

namespace hwswpt {

/// Black-76 vol implied from a swaption price (currency units), using the
/// forward swap rate, the annuity and the expiry of `spec`.
double swaption_implied_vol(const DiscountCurve& curve, const SwaptionSpec& spec, double price);

struct SweepRow {
    int offset_bp = 0;
    double exact_price = 0.0;
    double freeze_price = 0.0;
    double corr_price = 0.0;
    double exact_vol = 0.0;        // NaN if the price carries no invertible time value
    double freeze_vol_err = 0.0;   // signed, vs exact_vol
    double corr_vol_err = 0.0;
    double freeze_price_err = 0.0;
    double corr_price_err = 0.0;
};

struct SweepReport {
    double atm_rate = 0.0;
    std::vector<SweepRow> rows;
    std::vector<int> skipped_offsets;  // strikes that would be <= 0
};

/// Prices the out-of-the-money side (payer at or above the money, receiver
/// below) at strikes ATM + k * step_bp for |k * step_bp| <= range_bp.
SweepReport strike_sweep(const DiscountCurve& curve, const HullWhiteParams& params,
                         const SwaptionSpec& spec, int range_bp, int step_bp);

struct BenchRow {
    Method method = Method::exact;
    double total_seconds = 0.0;
    double per_call_seconds = 0.0;
};

/// Times `reps` consecutive repricings per method; the fastest of `rounds`
/// interleaved rounds is kept.
std::vector<BenchRow> benchmark(const DiscountCurve& curve, const HullWhiteParams& params,
                                const SwaptionSpec& spec, int reps, int rounds = 5);

}  // namespace hwswpt
