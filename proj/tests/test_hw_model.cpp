#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"
#include "hwswpt/errors.hpp"
#include "hwswpt/hw_model.hpp"
#include "support/test_support.hpp"

using namespace hwswpt;
using testing::rel_diff;

namespace {

// V(theta) straight from its integral definition.
double variance_by_quadrature(const HullWhiteParams& p, double theta) {
    const double a = p.mean_reversion();
    std::vector<double> cuts{0.0};
    for (double b : p.vol_breakpoints())
        if (b > 0.0 && b < theta) cuts.push_back(b);
    cuts.push_back(theta);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        total += testing::integrate(
            [&](double s) {
                const double eta = p.eta_at(s);
                return eta * eta * std::exp(2.0 * a * s);
            },
            cuts[k], cuts[k + 1]);
    return total / (a * a);
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(HullWhiteParams(0.0, {0.0}, {0.01}), InputError);
    CHECK_THROWS_AS(HullWhiteParams(5e-7, {0.0}, {0.01}), InputError);
    CHECK_THROWS_AS(HullWhiteParams(0.02, {0.0}, {0.0}), InputError);
    CHECK_THROWS_AS(HullWhiteParams(0.02, {0.5}, {0.01}), InputError);
    CHECK_THROWS_AS(HullWhiteParams(0.02, {0.0, 2.0, 1.0}, {0.01, 0.01, 0.01}), InputError);
    CHECK_THROWS_AS(HullWhiteParams(0.02, {0.0, 1.0}, {0.01}), InputError);
    CHECK_NOTHROW(HullWhiteParams(1e-6, {0.0}, {0.01}));
}

TEST_CASE("eta lookup uses half-open segments") {
    const HullWhiteParams p(0.02, {0.0, 1.0, 2.0}, {0.01, 0.02, 0.03});
    CHECK(p.eta_at(0.0) == 0.01);
    CHECK(p.eta_at(0.999) == 0.01);
    CHECK(p.eta_at(1.0) == 0.02);
    CHECK(p.eta_at(50.0) == 0.03);
}

TEST_CASE("variance factor") {
    const auto p = HullWhiteParams::constant(0.02, 0.01);
    const double closed = 1e-4 * std::expm1(0.04) / (2.0 * 0.02 * 0.02 * 0.02);
    CHECK(rel_diff(variance_factor(p, 1.0), closed) < 1e-15);
    CHECK(rel_diff(variance_factor(p, 1.0), 0.25506733870242641723) < 1e-14);
    CHECK(rel_diff(variance_factor(p, 1.0), variance_by_quadrature(p, 1.0)) < 1e-12);
    CHECK_THROWS_AS(variance_factor(p, 0.0), InputError);

    const HullWhiteParams split(0.02, {0.0, 0.4}, {0.01, 0.01});
    CHECK(rel_diff(variance_factor(split, 1.0), variance_factor(p, 1.0)) <= 1e-15);

    // additivity over sub-intervals
    const HullWhiteParams steps(0.05, {0.0, 1.0, 3.0}, {0.012, 0.007, 0.02});
    const double whole = variance_factor(steps, 4.0);
    const double a = 0.05;
    double parts = 0.0;
    for (auto [lo, hi, eta] : {std::tuple{0.0, 1.0, 0.012}, {1.0, 3.0, 0.007}, {3.0, 4.0, 0.02}})
        parts += eta * eta * (std::exp(2 * a * hi) - std::exp(2 * a * lo)) / (2 * a * a * a);
    CHECK(rel_diff(whole, parts) < 1e-14);
    CHECK(rel_diff(whole, variance_by_quadrature(steps, 4.0)) < 1e-12);
}

TEST_CASE("theta on a breakpoint uses the segment ending there") {
    const HullWhiteParams p(0.03, {0.0, 2.0}, {0.01, 0.5});
    const auto flat = HullWhiteParams::constant(0.03, 0.01);
    CHECK(rel_diff(variance_factor(p, 2.0), variance_factor(flat, 2.0)) < 1e-15);
}

TEST_CASE("alpha against the constant-vol formula and quadrature") {
    const auto p = HullWhiteParams::constant(0.02, 0.01);
    const double a = 0.02, eta = 0.01, theta = 1.0, t = 2.0;
    const double closed_sq = eta * eta / (2 * a * a * a) *
                             std::pow(std::exp(-a * theta) - std::exp(-a * t), 2) *
                             (std::exp(2 * a * theta) - 1.0);
    CHECK(rel_diff(alpha(p, theta, t), std::sqrt(closed_sq)) < 1e-12);
    CHECK(rel_diff(alpha(p, theta, t), 0.0098024768397557697) < 1e-13);
    CHECK(rel_diff(alpha(p, theta, t), std::sqrt(testing::relative_bond_variance(p, theta, theta, t))) <
          1e-10);
    CHECK(alpha(p, theta, theta) == 0.0);
    CHECK_THROWS_AS(alpha(p, theta, 0.5), InputError);
}

TEST_CASE("tau") {
    const auto p = HullWhiteParams::constant(0.02, 0.01);
    CHECK(rel_diff(tau(p, 1.0, 1.0, 6.0), 0.047109419493195108869) < 1e-13);
    CHECK(rel_diff(tau(p, 1.0, 1.0, 6.0), std::sqrt(testing::relative_bond_variance(p, 1.0, 1.0, 6.0))) <
          1e-10);
    CHECK(tau(p, 1.0, 1.5, 1.5) == 0.0);
    for (double t : {1.5, 2.0, 7.0, 21.0}) CHECK(tau(p, 1.0, 1.0, t) == alpha(p, 1.0, t));
    CHECK_THROWS_AS(tau(p, 1.0, 0.5, 2.0), InputError);
    CHECK_THROWS_AS(tau(p, 1.0, 2.0, 1.5), InputError);
}

TEST_CASE("schedule coefficients") {
    const HullWhiteParams p(0.04, {0.0, 0.5, 1.5}, {0.008, 0.012, 0.006});
    const std::vector<double> times{2.0, 3.0, 4.0, 5.0};
    const auto vc = vol_coefficients(p, 1.7, times);
    CHECK(vc.taus[0] == 0.0);
    CHECK(vc.h_factors[0] == 0.0);
    CHECK(vc.alphas[0] > 0.0);
    for (std::size_t i = 1; i < times.size(); ++i) {
        CHECK(vc.alphas[i] > vc.alphas[i - 1]);
        CHECK(vc.taus[i] > vc.taus[i - 1]);
        CHECK(rel_diff(vc.alphas[i], alpha(p, 1.7, times[i])) < 1e-14);
        CHECK(rel_diff(vc.taus[i], tau(p, 1.7, 2.0, times[i])) < 1e-14);
        CHECK(rel_diff(vc.h_factors[i], bond_loading(0.04, 2.0, times[i])) < 1e-14);
        // tau_i = a H_i sqrt(V)
        CHECK(rel_diff(vc.taus[i], 0.04 * vc.h_factors[i] * std::sqrt(vc.variance_factor)) < 1e-14);
    }
    CHECK_THROWS_AS(vol_coefficients(p, 2.5, times), InputError);
}

TEST_CASE("linearity in eta and segment-split invariance") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = testing::random_params(rng);
        std::vector<double> doubled = p.vol_values();
        for (double& e : doubled) e *= 2.0;
        const auto p2 = p.with_vol_values(doubled);

        // insert a breakpoint inside the first segment with the same eta
        std::vector<double> breaks = p.vol_breakpoints(), etas = p.vol_values();
        const double end = breaks.size() > 1 ? breaks[1] : 1.0;
        breaks.insert(breaks.begin() + 1, 0.37 * end);
        etas.insert(etas.begin() + 1, etas.front());
        const HullWhiteParams split(p.mean_reversion(), breaks, etas);

        const double theta = 0.25 + 0.9 * trial / 5.0;
        const std::vector<double> times{theta + 0.1, theta + 1.1, theta + 2.1, theta + 7.1};
        const auto base = vol_coefficients(p, theta, times);
        const auto twice = vol_coefficients(p2, theta, times);
        const auto sp = vol_coefficients(split, theta, times);
        for (std::size_t i = 0; i < times.size(); ++i) {
            CHECK(rel_diff(twice.alphas[i], 2.0 * base.alphas[i]) < 1e-15);
            if (i > 0) CHECK(rel_diff(twice.taus[i], 2.0 * base.taus[i]) < 1e-15);
            CHECK(rel_diff(sp.alphas[i], base.alphas[i]) <= 1e-15);
            if (i > 0) CHECK(rel_diff(sp.taus[i], base.taus[i]) <= 1e-15);
        }
        CHECK(rel_diff(variance_factor(split, theta), variance_factor(p, theta)) <= 1e-15);
    }
}

TEST_CASE("closed forms match quadrature of their defining integrals") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u_theta(0.25, 10.0), u_gap(0.0, 0.5), u_len(0.25, 20.0);
    for (int trial = 0; trial < 40; ++trial) {
        const auto p = testing::random_params(rng);
        const double theta = u_theta(rng);
        const double t0 = theta + u_gap(rng);
        const double ti = t0 + u_len(rng);
        const double quad_alpha = std::sqrt(testing::relative_bond_variance(p, theta, theta, ti));
        const double quad_tau = std::sqrt(testing::relative_bond_variance(p, theta, t0, ti));
        CHECK(rel_diff(alpha(p, theta, ti), quad_alpha) < 1e-10);
        CHECK(rel_diff(tau(p, theta, t0, ti), quad_tau) < 1e-10);
    }
}
