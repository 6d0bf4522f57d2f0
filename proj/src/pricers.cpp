#include "hwswpt/pricers.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "hwswpt/black.hpp"
#include "hwswpt/errors.hpp"
#include "hwswpt/root_find.hpp"

namespace hwswpt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Flow schedule t_0..t_n with amounts c_i (c_0 = -1), today's discount factors
// and one slot per flow for alphas / taus, all in a single allocation.
struct Schedule {
    explicit Schedule(const DiscountCurve& curve, const SwaptionSpec& spec)
        : size(spec.periods() + 1), buffer(4 * size) {
        auto t = times();
        auto c = amounts();
        t[0] = spec.settlement();
        c[0] = -1.0;
        for (std::size_t i = 1; i < size; ++i) {
            t[i] = spec.pay_times()[i - 1];
            c[i] = spec.accruals()[i - 1] * spec.strike_rate();
        }
        c[size - 1] += 1.0;
        curve.discount_factors(t, dfs());
    }

    std::span<double> times() { return {buffer.data(), size}; }
    std::span<double> amounts() { return {buffer.data() + size, size}; }
    std::span<double> dfs() { return {buffer.data() + 2 * size, size}; }
    std::span<double> vols() { return {buffer.data() + 3 * size, size}; }

    std::size_t size;
    std::vector<double> buffer;
};

// B_0 and alpha_0^i from a filled schedule; `weights` has n entries.
double freeze_from_schedule(Schedule& s, std::span<double> weights) {
    const auto c = s.amounts();
    const auto df = s.dfs();
    double bond = 0.0;
    for (std::size_t i = 1; i < s.size; ++i) {
        weights[i - 1] = c[i] * df[i] / df[0];
        bond += weights[i - 1];
    }
    if (!(bond > 0.0)) throw InputError("freeze weights: forward bond is not positive");
    for (double& w : weights) w /= bond;
    return bond;
}

// Black-form price on the forward bond with strike K and aggregate vol sigma;
// writes kappa. Zero vol gives the discounted intrinsic value.
double lognormal_bond_option(double settlement_df, double bond_forward, double strike,
                             double sigma, Side side, double& kappa) {
    if (!(sigma > 0.0)) {
        kappa = 0.0;
        const double w = side == Side::receiver ? 1.0 : -1.0;
        return settlement_df * std::max(w * (bond_forward - strike), 0.0);
    }
    kappa = (std::log(bond_forward / strike) - 0.5 * sigma * sigma) / sigma;
    if (side == Side::receiver)
        return settlement_df *
               (bond_forward * normal_cdf(kappa + sigma) - strike * normal_cdf(kappa));
    return settlement_df * (strike * normal_cdf(-kappa) - bond_forward * normal_cdf(-kappa - sigma));
}

}  // namespace

const char* to_string(Method m) {
    switch (m) {
        case Method::exact: return "exact";
        case Method::freeze: return "freeze";
        case Method::corrector: return "corrector";
    }
    return "?";
}

double solve_kappa(std::span<const double> discounted_flows, std::span<const double> alphas) {
    return solve_exponential_sum(discounted_flows, alphas);
}

PricingResult price_exact(const DiscountCurve& curve, const HullWhiteParams& params,
                          const SwaptionSpec& spec) {
    const auto start = Clock::now();
    Schedule s(curve, spec);
    const auto alphas = s.vols();
    exercise_alphas(params, spec.expiry(), s.times(), alphas);
    const auto d = s.amounts();
    for (std::size_t i = 0; i < s.size; ++i) d[i] *= s.dfs()[i];

    PricingResult r;
    r.method = Method::exact;
    r.side = spec.side();
    r.kappa = solve_kappa(d, alphas);
    double value = 0.0;
    if (spec.side() == Side::receiver) {
        for (std::size_t i = 0; i < s.size; ++i) value += d[i] * normal_cdf(r.kappa + alphas[i]);
    } else {
        for (std::size_t i = 0; i < s.size; ++i) value -= d[i] * normal_cdf(-r.kappa - alphas[i]);
    }
    r.price = std::max(value, 0.0) * spec.notional();
    r.bond_forward = -std::accumulate(d.begin() + 1, d.end(), 0.0) / d[0];
    r.elapsed = seconds_since(start);
    return r;
}

FreezeWeights freeze_weights(const DiscountCurve& curve, const SwaptionSpec& spec) {
    Schedule s(curve, spec);
    FreezeWeights fw;
    fw.weights.resize(spec.periods());
    fw.bond_forward = freeze_from_schedule(s, fw.weights);
    fw.settlement_df = s.dfs()[0];
    fw.forward_bonds.resize(s.size);
    for (std::size_t i = 0; i < s.size; ++i) fw.forward_bonds[i] = s.dfs()[i] / s.dfs()[0];
    return fw;
}

double period_vol(std::span<const double> weights, std::span<const double> taus) {
    if (taus.size() == weights.size() + 1)
        taus = taus.subspan(1);
    else if (taus.size() != weights.size())
        throw InputError("period vol: weights and taus differ in length");
    double sigma = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) sigma += weights[i] * taus[i];
    return sigma;
}

PricingResult price_initial_freeze(const DiscountCurve& curve, const HullWhiteParams& params,
                                   const SwaptionSpec& spec) {
    const auto start = Clock::now();
    Schedule s(curve, spec);
    PricingResult r;
    r.method = Method::freeze;
    r.side = spec.side();
    r.freeze_weights.resize(spec.periods());
    r.bond_forward = freeze_from_schedule(s, r.freeze_weights);
    const auto taus = s.vols();
    period_taus(params, spec.expiry(), s.times(), taus);

    const double sigma = period_vol(r.freeze_weights, taus);
    r.aggregate_vol = sigma;
    r.price = lognormal_bond_option(s.dfs()[0], r.bond_forward, r.strike, sigma, spec.side(),
                                    r.kappa) *
              spec.notional();
    r.elapsed = seconds_since(start);
    return r;
}

double solve_strike_state(std::span<const double> discounted_flows, std::span<const double> taus,
                          StrikeStateMode mode) {
    if (discounted_flows.size() != taus.size())
        throw InputError("strike state: flows and taus differ in length");
    if (mode == StrikeStateMode::exponential) return solve_exponential_sum(discounted_flows, taus);

    double level = 0.0, convexity = 0.0, slope = 0.0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        level += discounted_flows[i];
        convexity += discounted_flows[i] * taus[i] * taus[i];
        slope += discounted_flows[i] * taus[i];
    }
    if (slope == 0.0) throw NumericError("strike state: zero first-order slope");
    return (level - 0.5 * convexity) / slope;
}

CorrectorWeights corrector_weights(const DiscountCurve& curve, const SwaptionSpec& spec,
                                   std::span<const double> taus, double strike_state,
                                   StrikeStateMode mode) {
    const std::size_t n = spec.periods();
    if (taus.size() != n + 1) throw InputError("corrector weights: taus must cover t_0..t_n");
    if (!std::isfinite(strike_state)) throw NumericError("corrector weights: strike state not finite");
    const double settlement_df = curve.discount_factor(spec.settlement());

    CorrectorWeights cw;
    cw.strike_bonds.resize(n + 1);
    cw.weights.resize(n);
    for (std::size_t i = 0; i <= n; ++i) {
        const double p0 = i == 0 ? 1.0 : curve.discount_factor(spec.pay_times()[i - 1]) / settlement_df;
        const double shock = -taus[i] * strike_state - 0.5 * taus[i] * taus[i];
        cw.strike_bonds[i] = p0 * (mode == StrikeStateMode::exponential ? std::exp(shock) : 1.0 + shock);
        if (!(cw.strike_bonds[i] > 0.0))
            throw NumericError("corrector weights: non-positive bond price at the strike state");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double c = spec.accruals()[i] * spec.strike_rate() + (i + 1 == n ? 1.0 : 0.0);
        cw.weights[i] = c * cw.strike_bonds[i + 1];
        cw.bond_at_strike += cw.weights[i];
    }
    for (double& w : cw.weights) w /= cw.bond_at_strike;
    return cw;
}

PricingResult price_corrector(const DiscountCurve& curve, const HullWhiteParams& params,
                              const SwaptionSpec& spec, StrikeStateMode mode) {
    const auto start = Clock::now();
    Schedule s(curve, spec);
    const std::size_t n = spec.periods();
    PricingResult r;
    r.method = Method::corrector;
    r.side = spec.side();
    r.freeze_weights.resize(n);
    r.bond_forward = freeze_from_schedule(s, r.freeze_weights);
    const auto taus = s.vols();
    period_taus(params, spec.expiry(), s.times(), taus);

    // c_i P_0^i with c_0 = -K, reusing the amounts slot
    const auto d = s.amounts();
    d[0] = -r.strike;
    for (std::size_t i = 1; i <= n; ++i) d[i] = r.freeze_weights[i - 1] * r.bond_forward;

    double x_bar = solve_strike_state(d, taus, mode);
    r.strike_weights.resize(n);
    bool positive = true;
    if (mode == StrikeStateMode::first_order) {
        // P_K^i = P_0^i (1 - tau_i x - tau_i^2 / 2); B_K = K by construction of x
        double b_k = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            const double factor = 1.0 - taus[i] * x_bar - 0.5 * taus[i] * taus[i];
            positive = positive && factor > 0.0;
            r.strike_weights[i - 1] = d[i] * factor;
            b_k += r.strike_weights[i - 1];
        }
        if (positive)
            for (double& w : r.strike_weights) w /= b_k;
    }
    if (mode == StrikeStateMode::exponential || !positive) {
        r.used_exponential_fallback = mode == StrikeStateMode::first_order;
        x_bar = solve_strike_state(d, taus, StrikeStateMode::exponential);
        r.strike_weights =
            corrector_weights(curve, spec, taus, x_bar, StrikeStateMode::exponential).weights;
    }

    double sigma = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
        sigma += 0.5 * (r.freeze_weights[i - 1] + r.strike_weights[i - 1]) * taus[i];

    r.strike_state = x_bar;
    r.aggregate_vol = sigma;
    r.price = lognormal_bond_option(s.dfs()[0], r.bond_forward, r.strike, sigma, spec.side(),
                                    r.kappa) *
              spec.notional();
    r.elapsed = seconds_since(start);
    return r;
}

PricingResult price(Method method, const DiscountCurve& curve, const HullWhiteParams& params,
                    const SwaptionSpec& spec) {
    switch (method) {
        case Method::exact: return price_exact(curve, params, spec);
        case Method::freeze: return price_initial_freeze(curve, params, spec);
        case Method::corrector: return price_corrector(curve, params, spec);
    }
    throw InputError("unknown pricing method");
}

}  // namespace hwswpt
