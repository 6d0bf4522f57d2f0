#include "hwswpt/swaption.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "hwswpt/errors.hpp"

namespace hwswpt {

const char* to_string(Side s) { return s == Side::payer ? "payer" : "receiver"; }

Side parse_side(const char* text) {
    if (std::strcmp(text, "payer") == 0) return Side::payer;
    if (std::strcmp(text, "receiver") == 0) return Side::receiver;
    throw InputError(std::string("unknown swaption side '") + text + "'");
}

SwaptionSpec::SwaptionSpec(double expiry, double settlement, std::vector<double> pay_times,
                           std::vector<double> accruals, double strike_rate, Side side,
                           double notional)
    : expiry_(expiry),
      settlement_(settlement),
      pay_times_(std::move(pay_times)),
      accruals_(std::move(accruals)),
      strike_rate_(strike_rate),
      side_(side),
      notional_(notional) {
    if (!std::isfinite(expiry_) || !(expiry_ > 0.0))
        throw InputError("swaption: expiry must be positive");
    if (!std::isfinite(settlement_) || settlement_ < expiry_)
        throw InputError("swaption: settlement precedes expiry");
    if (pay_times_.empty())
        throw InputError("swaption: empty payment schedule");
    if (pay_times_.size() != accruals_.size())
        throw InputError("swaption: pay_times and accruals differ in length");
    double prev = settlement_;
    for (std::size_t i = 0; i < pay_times_.size(); ++i) {
        if (!std::isfinite(pay_times_[i]) || !(pay_times_[i] > prev))
            throw InputError("swaption: payment times must be strictly ascending after settlement");
        if (!std::isfinite(accruals_[i]) || !(accruals_[i] > 0.0))
            throw InputError("swaption: accruals must be positive");
        prev = pay_times_[i];
    }
    if (!std::isfinite(strike_rate_) || !(strike_rate_ > 0.0))
        throw InputError("swaption: strike rate must be positive");
    if (!std::isfinite(notional_) || !(notional_ > 0.0))
        throw InputError("swaption: notional must be positive");
}

SwaptionSpec SwaptionSpec::with_strike(double strike_rate) const {
    return {expiry_, settlement_, pay_times_, accruals_, strike_rate, side_, notional_};
}

SwaptionSpec SwaptionSpec::with_side(Side side) const {
    return {expiry_, settlement_, pay_times_, accruals_, strike_rate_, side, notional_};
}

SwaptionSpec make_swaption(double expiry, double tenor, int freq, double strike_rate, Side side,
                           double notional, double settlement_lag) {
    if (freq <= 0) throw InputError("swaption: payment frequency must be positive");
    const double periods_real = tenor * freq;
    const auto periods = static_cast<long>(std::lround(periods_real));
    if (periods < 1 || std::abs(periods_real - static_cast<double>(periods)) > 1e-9)
        throw InputError("swaption: tenor is not a whole number of periods");
    const double settle = expiry + settlement_lag;
    const double delta = 1.0 / freq;
    std::vector<double> times(static_cast<std::size_t>(periods));
    std::vector<double> accruals(times.size(), delta);
    for (std::size_t i = 0; i < times.size(); ++i)
        times[i] = settle + static_cast<double>(i + 1) * delta;
    return {expiry, settle, std::move(times), std::move(accruals), strike_rate, side, notional};
}

std::vector<CashFlow> cash_flows(const SwaptionSpec& spec) {
    std::vector<CashFlow> flows;
    flows.reserve(spec.periods() + 1);
    flows.push_back({spec.settlement(), -1.0});
    for (std::size_t i = 0; i < spec.periods(); ++i)
        flows.push_back({spec.pay_times()[i], spec.accruals()[i] * spec.strike_rate()});
    flows.back().amount += 1.0;
    return flows;
}

double annuity(const DiscountCurve& curve, const SwaptionSpec& spec) {
    double level = 0.0;
    for (std::size_t i = 0; i < spec.periods(); ++i)
        level += spec.accruals()[i] * curve.discount_factor(spec.pay_times()[i]);
    return level;
}

double forward_swap_rate(const DiscountCurve& curve, const SwaptionSpec& spec) {
    return (curve.discount_factor(spec.settlement()) -
            curve.discount_factor(spec.pay_times().back())) /
           annuity(curve, spec);
}

double swap_value(const DiscountCurve& curve, const SwaptionSpec& spec) {
    double value = 0.0;
    for (const auto& cf : cash_flows(spec)) value += cf.amount * curve.discount_factor(cf.time);
    return value;
}

}  // namespace hwswpt
