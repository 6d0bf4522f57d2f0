#include "hwswpt/black.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hwswpt/errors.hpp"

namespace hwswpt {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw InputError("inverse_normal_cdf: p outside (0, 1)");

    // Acklam's rational approximation, then Halley refinement against erfc.
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    for (int k = 0; k < 2; ++k) {
        // work with the smaller tail so the residual keeps relative precision
        const double e = (x <= 0.0) ? normal_cdf(x) - p : (1.0 - p) - normal_cdf(-x);
        const double u = e / normal_pdf(x);
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

double black_price(double forward, double strike, double total_vol, double numeraire_value,
                   Parity parity) {
    if (!(forward > 0.0) || !(strike > 0.0))
        throw InputError("black: forward and strike must be positive");
    if (!(total_vol >= 0.0)) throw InputError("black: negative volatility");
    const double w = parity == Parity::call ? 1.0 : -1.0;
    if (total_vol == 0.0) return numeraire_value * std::max(w * (forward - strike), 0.0);
    const double d1 = std::log(forward / strike) / total_vol + 0.5 * total_vol;
    const double d2 = d1 - total_vol;
    return numeraire_value * w * (forward * normal_cdf(w * d1) - strike * normal_cdf(w * d2));
}

double black_vega(double forward, double strike, double total_vol, double numeraire_value) {
    if (total_vol <= 0.0) return 0.0;
    const double d1 = std::log(forward / strike) / total_vol + 0.5 * total_vol;
    return numeraire_value * forward * normal_pdf(d1);
}

double implied_black_vol(double price, double forward, double strike, double expiry,
                         double numeraire_value, Parity parity) {
    if (!(forward > 0.0) || !(strike > 0.0))
        throw InputError("implied vol: forward and strike must be positive");
    if (!(expiry > 0.0)) throw InputError("implied vol: expiry must be positive");
    if (!(numeraire_value > 0.0)) throw InputError("implied vol: numeraire must be positive");

    // Invert on the out-of-the-money side; parity moves the price across.
    const double w = parity == Parity::call ? 1.0 : -1.0;
    const double intrinsic = numeraire_value * std::max(w * (forward - strike), 0.0);
    const double upper = numeraire_value * (parity == Parity::call ? forward : strike);
    if (!std::isfinite(price) || !(price > intrinsic) || !(price < upper))
        throw InputError("implied vol: price " + std::to_string(price) +
                         " outside no-arbitrage bounds");

    Parity otm = parity;
    double target = price;
    if (intrinsic > 0.0) {
        otm = parity == Parity::call ? Parity::put : Parity::call;
        target = price - intrinsic;
    }
    if (!(target > 0.0)) throw InputError("implied vol: price indistinguishable from intrinsic");

    auto f = [&](double v) { return black_price(forward, strike, v, numeraire_value, otm) - target; };

    double lo = 0.0;
    double hi = 1.0;
    while (f(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 64.0) throw NumericError("implied vol: no bracket");
    }
    // The vega maximum sqrt(2|ln F/K|) is a good Newton start for Black.
    double v = std::clamp(std::sqrt(2.0 * std::abs(std::log(forward / strike))), lo, hi);
    if (v <= lo || v >= hi) v = 0.5 * (lo + hi);

    const double tol = 1e-14 * target;
    for (int iter = 0; iter < 100; ++iter) {
        const double r = f(v);
        if (std::abs(r) <= tol) return v / std::sqrt(expiry);
        if (r > 0.0)
            hi = v;
        else
            lo = v;
        const double vega = black_vega(forward, strike, v, numeraire_value);
        double next = vega > 0.0 ? v - r / vega : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - v) <= 1e-16 * std::max(v, 1e-300) || hi - lo <= 4e-16 * hi)
            return next / std::sqrt(expiry);
        v = next;
    }
    throw NumericError("implied vol: no convergence after 100 iterations");
}

}  // namespace hwswpt
