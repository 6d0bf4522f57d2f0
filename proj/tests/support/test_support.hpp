#pragma once

// Test-only helpers: an independent adaptive quadrature, a bisection root
// finder and the shared market fixtures.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "hwswpt/calibration.hpp"
#include "hwswpt/curve.hpp"
#include "hwswpt/hw_model.hpp"
#include "hwswpt/swaption.hpp"

namespace testing {

inline double rel_diff(double x, double ref) {
    return std::abs(x - ref) / std::max(std::abs(ref), 1e-300);
}

namespace detail {

// Gauss-Kronrod 7/15 nodes on [-1, 1]
inline constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                  0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                  0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                  0.207784955007898467600689403773245, 0.0};
inline constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                  0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                  0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                  0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                 0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double gk15(const std::function<double(double)>& f, double a, double b, double rel_tol,
                   int depth) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = wgk[7] * fc, gauss = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double s = f(c - h * xgk[j]) + f(c + h * xgk[j]);
        kronrod += wgk[j] * s;
        if (j % 2 == 1) gauss += wg[j / 2] * s;
    }
    kronrod *= h;
    gauss *= h;
    if (std::abs(kronrod - gauss) <= rel_tol * std::abs(kronrod) || depth >= 20) return kronrod;
    return gk15(f, a, c, rel_tol, depth + 1) + gk15(f, c, b, rel_tol, depth + 1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integral of f over [a, b]; each panel is accepted
/// once the Gauss and Kronrod estimates agree to `rel_tol`.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-13) {
    if (a == b) return 0.0;
    return detail::gk15(f, a, b, rel_tol, 0);
}

/// Bisection for a function with a sign change on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double f_lo = f(lo);
    for (int i = 0; i < 400 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = f(mid);
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Hull-White bond volatility nu(s, t) straight from the short-rate model.
inline double bond_vol(const hwswpt::HullWhiteParams& p, double s, double t) {
    const double a = p.mean_reversion();
    return p.eta_at(s) * (1.0 - std::exp(-a * (t - s))) / a;
}

/// int_0^theta (nu(s, t_i) - nu(s, t_ref))^2 ds, integrated piecewise between breakpoints.
inline double relative_bond_variance(const hwswpt::HullWhiteParams& p, double theta, double t_ref,
                                     double t_i) {
    std::vector<double> cuts{0.0};
    for (double b : p.vol_breakpoints())
        if (b > 0.0 && b < theta) cuts.push_back(b);
    cuts.push_back(theta);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        total += integrate(
            [&](double s) {
                const double d = bond_vol(p, s, t_i) - bond_vol(p, s, t_ref);
                return d * d;
            },
            cuts[k], cuts[k + 1]);
    }
    return total;
}

inline hwswpt::DiscountCurve flat5() { return hwswpt::flat_curve(0.05); }

/// Upward-sloping synthetic market: zero rate 3.5% rising towards 5%.
inline hwswpt::DiscountCurve market_curve() {
    std::vector<double> t{0.0, 0.5, 1, 2, 3, 5, 7, 10, 15, 20, 30, 40};
    std::vector<double> df;
    for (double x : t) df.push_back(std::exp(-(0.035 + 0.015 * (1.0 - std::exp(-x / 5.0))) * x));
    return {t, df};
}

/// Diagonal ATM strip: expiries 1..10, tenors 10..1, Black vols 21.4% down to 16%.
inline std::vector<hwswpt::CalibrationInstrument> diagonal_strip() {
    std::vector<hwswpt::CalibrationInstrument> strip;
    for (int k = 1; k <= 10; ++k)
        strip.push_back({double(k), double(11 - k), 1, hwswpt::QuoteKind::black_vol, 0.22 - 0.006 * k});
    return strip;
}

/// Random schedule of eta values on random breakpoints.
inline hwswpt::HullWhiteParams random_params(std::mt19937_64& rng, double a_lo = 0.005,
                                             double a_hi = 0.1, double eta_lo = 0.002,
                                             double eta_hi = 0.03) {
    std::uniform_real_distribution<double> ua(a_lo, a_hi), ue(eta_lo, eta_hi), ub(0.3, 2.5);
    std::uniform_int_distribution<int> nseg(1, 6);
    std::vector<double> breaks{0.0}, etas{ue(rng)};
    const int m = nseg(rng);
    for (int l = 1; l < m; ++l) {
        breaks.push_back(breaks.back() + ub(rng));
        etas.push_back(ue(rng));
    }
    return {ua(rng), breaks, etas};
}

}  // namespace testing
