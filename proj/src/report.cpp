#include "hwswpt/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "hwswpt/black.hpp"
#include "hwswpt/errors.hpp"

namespace hwswpt {

double swaption_implied_vol(const DiscountCurve& curve, const SwaptionSpec& spec, double price) {
    const Parity parity = spec.side() == Side::payer ? Parity::call : Parity::put;
    return implied_black_vol(price / spec.notional(), forward_swap_rate(curve, spec), spec.strike_rate(),
                             spec.expiry(), annuity(curve, spec), parity);
}

namespace {

double vol_or_nan(const DiscountCurve& curve, const SwaptionSpec& spec, double price) {
    try {
        return swaption_implied_vol(curve, spec, price);
    } catch (const std::exception&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

}  // namespace

SweepReport strike_sweep(const DiscountCurve& curve, const HullWhiteParams& params,
                         const SwaptionSpec& spec, int range_bp, int step_bp) {
    if (range_bp < 0 || step_bp <= 0) throw InputError("sweep: range must be >= 0 and step > 0");
    SweepReport report;
    report.atm_rate = forward_swap_rate(curve, spec);
    const int steps = range_bp / step_bp;
    for (int k = -steps; k <= steps; ++k) {
        const int offset = k * step_bp;
        const double strike = report.atm_rate + offset * 1e-4;
        if (strike <= 0.0) {
            report.skipped_offsets.push_back(offset);
            continue;
        }
        const auto s = spec.with_strike(strike).with_side(offset >= 0 ? Side::payer : Side::receiver);
        SweepRow row;
        row.offset_bp = offset;
        row.exact_price = price_exact(curve, params, s).price;
        row.freeze_price = price_initial_freeze(curve, params, s).price;
        row.corr_price = price_corrector(curve, params, s).price;
        row.exact_vol = vol_or_nan(curve, s, row.exact_price);
        row.freeze_vol_err = vol_or_nan(curve, s, row.freeze_price) - row.exact_vol;
        row.corr_vol_err = vol_or_nan(curve, s, row.corr_price) - row.exact_vol;
        row.freeze_price_err = row.freeze_price - row.exact_price;
        row.corr_price_err = row.corr_price - row.exact_price;
        report.rows.push_back(row);
    }
    return report;
}

std::vector<BenchRow> benchmark(const DiscountCurve& curve, const HullWhiteParams& params,
                                const SwaptionSpec& spec, int reps, int rounds) {
    if (reps < 1 || rounds < 1) throw InputError("bench: reps and rounds must be >= 1");
    std::vector<BenchRow> rows{{Method::exact}, {Method::freeze}, {Method::corrector}};
    for (auto& row : rows) row.total_seconds = std::numeric_limits<double>::infinity();
    volatile double sink = 0.0;
    for (int r = 0; r < rounds; ++r) {
        for (auto& row : rows) {
            const auto start = std::chrono::steady_clock::now();
            double acc = 0.0;
            for (int i = 0; i < reps; ++i) acc += price(row.method, curve, params, spec).price;
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
            sink = sink + acc;
            row.total_seconds = std::min(row.total_seconds, dt.count());
        }
    }
    for (auto& row : rows) row.per_call_seconds = row.total_seconds / reps;
    return rows;
}

}  // namespace hwswpt
