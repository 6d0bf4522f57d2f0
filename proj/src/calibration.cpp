#include "hwswpt/calibration.hpp"

#include <cmath>
#include <string>

#include "hwswpt/black.hpp"
#include "hwswpt/errors.hpp"
#include "hwswpt/pricers.hpp"
#include "hwswpt/root_find.hpp"

namespace hwswpt {

namespace {

void validate(std::span<const CalibrationInstrument> instruments) {
    if (instruments.empty()) throw InputError("calibration: empty instrument strip");
    for (std::size_t k = 0; k < instruments.size(); ++k) {
        const auto& inst = instruments[k];
        const std::string where = "calibration: instrument " + std::to_string(k);
        if (!(inst.expiry > 0.0) || !std::isfinite(inst.expiry))
            throw InputError(where + " has a non-positive expiry");
        if (!(inst.tenor > 0.0) || !std::isfinite(inst.tenor))
            throw InputError(where + " has a non-positive tenor");
        if (inst.freq <= 0) throw InputError(where + " has a non-positive frequency");
        if (!(inst.quote >= 0.0) || !std::isfinite(inst.quote))
            throw InputError(where + " has a negative quote");
        if (k > 0 && !(inst.expiry > instruments[k - 1].expiry))
            throw InputError("calibration: expiries must be strictly ascending");
    }
}

}  // namespace

SwaptionSpec atm_swaption(const DiscountCurve& curve, const CalibrationInstrument& instrument) {
    // strike is a placeholder until the forward rate is known
    const auto probe = make_swaption(instrument.expiry, instrument.tenor, instrument.freq, 0.01,
                                     Side::payer);
    return probe.with_strike(forward_swap_rate(curve, probe));
}

double atm_quote_to_price(const DiscountCurve& curve, const CalibrationInstrument& instrument) {
    if (instrument.kind == QuoteKind::price) return instrument.quote;
    const auto spec = atm_swaption(curve, instrument);
    const double forward = spec.strike_rate();
    return black_price(forward, forward, instrument.quote * std::sqrt(instrument.expiry),
                       annuity(curve, spec), Parity::call);
}

CalibrationResult bootstrap(const DiscountCurve& curve,
                            std::span<const CalibrationInstrument> instruments,
                            double mean_reversion) {
    validate(instruments);

    std::vector<double> breaks{0.0};
    for (std::size_t k = 0; k + 1 < instruments.size(); ++k) breaks.push_back(instruments[k].expiry);
    std::vector<double> etas(instruments.size(), 0.01);
    HullWhiteParams params(mean_reversion, breaks, etas);

    CalibrationResult out{params, {}, {}, {}};
    for (std::size_t k = 0; k < instruments.size(); ++k) {
        const auto spec = atm_swaption(curve, instruments[k]);
        const double target = atm_quote_to_price(curve, instruments[k]);

        auto model_price = [&](double eta) {
            // segments after k do not reach expiry k; keep them equal to eta
            for (std::size_t j = k; j < etas.size(); ++j) etas[j] = eta;
            return price_exact(curve, params.with_vol_values(etas), spec).price;
        };
        const double lo = model_price(min_calibrated_eta);
        const double hi = model_price(max_calibrated_eta);
        if (!(target > lo) || !(target < hi))
            throw NumericError("calibration: instrument " + std::to_string(k) +
                               " target price unattainable within eta bounds");
        const double eta = brent_root([&](double e) { return model_price(e) - target; },
                                      min_calibrated_eta, max_calibrated_eta, 1e-12 * target);
        const double repriced = model_price(eta);

        out.target_prices.push_back(target);
        out.model_prices.push_back(repriced);
        out.relative_residuals.push_back((repriced - target) / target);
    }
    out.params = params.with_vol_values(etas);
    return out;
}

}  // namespace hwswpt
