#include "hwswpt/root_find.hpp"

#include <algorithm>
#include <string>

namespace hwswpt {

namespace {

// g(x) = sum_i d_i exp(-v_i^2/2 - (v_i - v_0) x), i.e. the target sum times exp(v_0 x).
struct ScaledSum {
    std::span<const double> d;
    std::span<const double> v;

    std::pair<double, double> value_and_slope(double x, double& scale) const {
        double g = 0.0, dg = 0.0;
        scale = 0.0;
        const double v0 = v[0];
        for (std::size_t i = 0; i < d.size(); ++i) {
            const double term = d[i] * std::exp(-0.5 * v[i] * v[i] - (v[i] - v0) * x);
            g += term;
            dg -= (v[i] - v0) * term;
            scale += std::abs(term);
        }
        return {g, dg};
    }
};

}  // namespace

double solve_exponential_sum(std::span<const double> d, std::span<const double> vols) {
    if (d.size() != vols.size() || d.size() < 2)
        throw InputError("exponential sum: need at least two matching flows and vols");
    if (!(d[0] < 0.0)) throw InputError("exponential sum: first flow must be negative");
    bool any_positive = false;
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (d[i] < 0.0) throw InputError("exponential sum: flows after the first must be >= 0");
        any_positive = any_positive || d[i] > 0.0;
        if (vols[i] < vols[i - 1]) throw InputError("exponential sum: vols must be nondecreasing");
    }
    if (!any_positive) throw InputError("exponential sum: no positive flow");
    if (!(vols[0] < vols.back()))
        throw NumericError("exponential sum: all vols equal, no root");

    const ScaledSum g{d, vols};
    double scale = 0.0;

    double lo = -10.0, hi = 10.0;
    double g_lo = g.value_and_slope(lo, scale).first;
    double g_hi = g.value_and_slope(hi, scale).first;
    for (int k = 0; k < 60 && !(g_lo >= 0.0 && g_hi <= 0.0); ++k) {
        if (g_lo < 0.0) {
            hi = lo;
            g_hi = g_lo;
            lo *= 2.0;
            g_lo = g.value_and_slope(lo, scale).first;
        } else {
            lo = hi;
            g_lo = g_hi;
            hi *= 2.0;
            g_hi = g.value_and_slope(hi, scale).first;
        }
    }
    if (!(g_lo >= 0.0 && g_hi <= 0.0)) throw NumericError("exponential sum: no bracket found");
    if (g_lo == 0.0) return lo;
    if (g_hi == 0.0) return hi;

    double x = std::clamp(0.0, lo, hi);
    if (x == lo || x == hi) x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 100; ++iter) {
        const auto [gx, dgx] = g.value_and_slope(x, scale);
        if (std::abs(gx) <= 1e-12 * scale) return x;
        if (gx > 0.0)
            lo = x;
        else
            hi = x;
        double next = (dgx < 0.0) ? x - gx / dgx : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x) return x;
        x = next;
    }
    throw NumericError("exponential sum: no convergence after 100 iterations");
}

}  // namespace hwswpt
