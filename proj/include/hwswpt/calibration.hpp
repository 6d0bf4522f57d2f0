#pragma once

#include <span>
#include <vector>

#include "hwswpt/curve.hpp"
#include "hwswpt/hw_model.hpp"
#include "hwswpt/swaption.hpp"

namespace hwswpt {

enum class QuoteKind { black_vol, price };

/// ATM swaption used as calibration target; settles at expiry with a regular
/// schedule of `freq` periods a year.
struct CalibrationInstrument {
    double expiry = 0.0;
    double tenor = 0.0;
    int freq = 1;
    QuoteKind kind = QuoteKind::black_vol;
    double quote = 0.0;  // annualized Black vol, or price per unit notional
};

/// Payer swaption struck at the forward swap rate.
SwaptionSpec atm_swaption(const DiscountCurve& curve, const CalibrationInstrument& instrument);

/// Target price per unit notional: the quote itself, or Black-76 with
/// F = K = S_0 on the annuity numeraire.
double atm_quote_to_price(const DiscountCurve& curve, const CalibrationInstrument& instrument);

struct CalibrationResult {
    HullWhiteParams params;
    std::vector<double> target_prices;
    std::vector<double> model_prices;
    std::vector<double> relative_residuals;
};

/// Sequential bootstrap of a piecewise-constant eta with breakpoints at the
/// instrument expiries: instrument k fixes eta on [T_{k-1}, T_k) (the last
/// one extends to infinity) with the earlier values held. Each step is a
/// Brent solve on eta in [1e-6, 5] against the exact price.
CalibrationResult bootstrap(const DiscountCurve& curve,
                            std::span<const CalibrationInstrument> instruments,
                            double mean_reversion);

inline constexpr double min_calibrated_eta = 1e-6;
inline constexpr double max_calibrated_eta = 5.0;

}  // namespace hwswpt
