#include "hwswpt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <vector>

#include "hwswpt/black.hpp"
#include "hwswpt/errors.hpp"

namespace hwswpt {

namespace {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1]: Newton on P_n from the Tricomi initial guesses.
Rule compute_gauss_legendre(int n) {
    Rule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const double pi = std::numbers::pi;
    for (int k = 0; k < (n + 1) / 2; ++k) {
        double x = std::cos(pi * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(k);
        const auto hi = static_cast<std::size_t>(n - 1 - k);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    return rule;
}

const Rule& gauss_legendre(int n) {
    static std::mutex mutex;
    static std::map<int, Rule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

// Short-rate model bond volatility nu(s, t) = eta(s) (1 - e^{-a (t - s)}) / a.
double bond_vol(const HullWhiteParams& params, double s, double t) {
    const double a = params.mean_reversion();
    return params.eta_at(s) * -std::expm1(-a * (t - s)) / a;
}

// int_0^theta (nu(s, t_i) - nu(s, t_0))^2 ds, 40-point Gauss-Legendre per smooth piece.
double integrated_relative_variance(const HullWhiteParams& params, double theta, double t_0,
                                    double t_i) {
    const Rule& rule = gauss_legendre(40);
    std::vector<double> cuts{0.0};
    for (double b : params.vol_breakpoints())
        if (b > 0.0 && b < theta) cuts.push_back(b);
    cuts.push_back(theta);

    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
        const double half = 0.5 * (cuts[k + 1] - cuts[k]);
        double piece = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            // nodes are interior, so eta(s) is the segment's value
            const double s = mid + half * rule.nodes[j];
            const double diff = bond_vol(params, s, t_i) - bond_vol(params, s, t_0);
            piece += rule.weights[j] * diff * diff;
        }
        total += half * piece;
    }
    return total;
}

struct TerminalBond {
    std::vector<double> log_amounts;  // ln(c_i P_0^i), i = 1..n
    std::vector<double> amounts;
    std::vector<double> taus;
    double settlement_df = 0.0;
};

TerminalBond terminal_bond(const DiscountCurve& curve, const HullWhiteParams& params,
                           const SwaptionSpec& spec) {
    TerminalBond tb;
    tb.settlement_df = curve.discount_factor(spec.settlement());
    const std::size_t n = spec.periods();
    for (std::size_t i = 0; i < n; ++i) {
        const double t = spec.pay_times()[i];
        double c = spec.accruals()[i] * spec.strike_rate();
        if (i + 1 == n) c += 1.0;
        const double amount = c * curve.discount_factor(t) / tb.settlement_df;
        tb.amounts.push_back(amount);
        tb.log_amounts.push_back(std::log(amount));
        tb.taus.push_back(
            std::sqrt(integrated_relative_variance(params, spec.expiry(), spec.settlement(), t)));
    }
    return tb;
}

// Rebased coupon bond at expiry given the Gaussian state x; decreasing in x.
double bond_at(const TerminalBond& tb, double x) {
    double b = 0.0;
    for (std::size_t i = 0; i < tb.taus.size(); ++i)
        b += tb.amounts[i] * std::exp(-tb.taus[i] * x - 0.5 * tb.taus[i] * tb.taus[i]);
    return b;
}

constexpr double domain_half_width = 20.0;
constexpr double strike = 1.0;

// int_lo^hi (sum_i c_i P_0^i phi(x + tau_i) - K phi(x)) dx with n-point Gauss-Legendre,
// each Gaussian term evaluated as one exp of its log so extreme nodes cannot overflow.
double integrate_region(const TerminalBond& tb, double lo, double hi, int n) {
    if (!(hi > lo)) return 0.0;
    const Rule& rule = gauss_legendre(n);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double log_norm = -0.5 * std::log(2.0 * std::numbers::pi);
    double sum = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double x = mid + half * rule.nodes[j];
        double f = -strike * std::exp(log_norm - 0.5 * x * x);
        for (std::size_t i = 0; i < tb.taus.size(); ++i) {
            const double y = x + tb.taus[i];
            f += std::exp(tb.log_amounts[i] + log_norm - 0.5 * y * y);
        }
        sum += rule.weights[j] * f;
    }
    return half * sum;
}

}  // namespace

double quadrature_price(const DiscountCurve& curve, const HullWhiteParams& params,
                        const SwaptionSpec& spec, const OracleConfig& config) {
    if (config.quad_points < 32) throw InputError("oracle: quad_points must be >= 32");
    const TerminalBond tb = terminal_bond(curve, params, spec);
    const double max_tau = *std::max_element(tb.taus.begin(), tb.taus.end());

    // exercise boundary: bond_at(x) = K
    const double lo_cut = -domain_half_width - max_tau;
    const double hi_cut = domain_half_width;
    double boundary;
    if (bond_at(tb, hi_cut) >= strike) {
        boundary = hi_cut;
    } else if (bond_at(tb, lo_cut) <= strike) {
        boundary = lo_cut;
    } else {
        double a = lo_cut, b = hi_cut;
        for (int iter = 0; iter < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++iter) {
            const double m = 0.5 * (a + b);
            (bond_at(tb, m) > strike ? a : b) = m;
        }
        boundary = 0.5 * (a + b);
    }

    auto integrate = [&](int n) {
        if (spec.side() == Side::receiver) return integrate_region(tb, lo_cut, boundary, n);
        return -integrate_region(tb, boundary, hi_cut, n);
    };

    int n = config.quad_points;
    double previous = integrate(n);
    for (int doubling = 0; doubling < 6; ++doubling) {
        n *= 2;
        const double current = integrate(n);
        if (std::abs(current - previous) <= 1e-11 * std::abs(current) + 1e-300)
            return std::max(current, 0.0) * tb.settlement_df * spec.notional();
        previous = current;
    }
    throw NumericError("oracle: quadrature did not converge");
}

MonteCarloEstimate mc_price(const DiscountCurve& curve, const HullWhiteParams& params,
                            const SwaptionSpec& spec, const OracleConfig& config) {
    if (config.mc_paths < 1000) throw InputError("oracle: mc_paths must be >= 1000");
    const TerminalBond tb = terminal_bond(curve, params, spec);
    const double w = spec.side() == Side::receiver ? 1.0 : -1.0;
    auto payoff = [&](double x) { return std::max(w * (bond_at(tb, x) - strike), 0.0); };

    constexpr long batch_size = 1L << 14;
    const long pairs = (config.mc_paths + 1) / 2;
    double sum = 0.0, sum_sq = 0.0;
    long done = 0;
    for (std::uint32_t batch = 0; done < pairs; ++batch) {
        std::seed_seq seq{static_cast<std::uint32_t>(config.mc_seed),
                          static_cast<std::uint32_t>(config.mc_seed >> 32), batch};
        std::mt19937_64 engine(seq);
        const long count = std::min(batch_size / 2, pairs - done);
        for (long k = 0; k < count; ++k) {
            // 53 random bits mapped into the open interval (0, 1)
            const double u = (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
            const double z = inverse_normal_cdf(u);
            const double y = 0.5 * (payoff(z) + payoff(-z));
            sum += y;
            sum_sq += y * y;
        }
        done += count;
    }
    const double mean = sum / static_cast<double>(pairs);
    const double var = std::max(sum_sq / static_cast<double>(pairs) - mean * mean, 0.0);
    const double scale = tb.settlement_df * spec.notional();
    return {mean * scale, std::sqrt(var / static_cast<double>(pairs - 1)) * scale};
}

}  // namespace hwswpt
