#pragma once

#include <cmath>
#include <span>
#include <utility>

#include "hwswpt/errors.hpp"

namespace hwswpt {

/// Root of sum_i d_i exp(-vols_i^2 / 2 - vols_i x) = 0.
///
/// Requires d_0 < 0, d_i >= 0 for i >= 1 with at least one positive, and
/// vols nondecreasing with vols_0 < vols_n. Under those conditions the sum,
/// rescaled by exp(vols_0 x), is convex and strictly decreasing, so the root
/// is unique. The bracket starts at [-10, 10] and is doubled until the sign
/// changes; safeguarded Newton then runs inside it.
double solve_exponential_sum(std::span<const double> d, std::span<const double> vols);

/// Brent's method on [lo, hi] for a function with f(lo) f(hi) <= 0.
/// Stops when |f| <= f_tol or the bracket collapses to a few ulps.
template <class F>
double brent_root(F&& f, double lo, double hi, double f_tol, int max_iter = 200) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) throw NumericError("brent: root not bracketed");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2.0 * 2.2e-16 * std::abs(b) + 1e-300;
        const double m = 0.5 * (c - b);
        if (std::abs(fb) <= f_tol || std::abs(m) <= tol) return b;

        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0)
                q = -q;
            else
                p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
    }
    throw NumericError("brent: no convergence");
}

}  // namespace hwswpt
