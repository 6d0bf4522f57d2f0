#include "hwswpt/hw_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hwswpt/errors.hpp"

namespace hwswpt {

HullWhiteParams::HullWhiteParams(double mean_reversion, std::vector<double> vol_breakpoints,
                                 std::vector<double> vol_values)
    : a_(mean_reversion), breaks_(std::move(vol_breakpoints)), etas_(std::move(vol_values)) {
    if (!std::isfinite(a_) || a_ < min_mean_reversion)
        throw InputError("model: mean reversion must be >= 1e-6");
    if (breaks_.empty() || breaks_.size() != etas_.size())
        throw InputError("model: breaks and etas must be non-empty and of equal length");
    if (breaks_.front() != 0.0)
        throw InputError("model: first volatility breakpoint must be 0");
    for (std::size_t l = 0; l < etas_.size(); ++l) {
        if (!std::isfinite(etas_[l]) || !(etas_[l] > 0.0))
            throw InputError("model: volatility values must be positive");
        if (!std::isfinite(breaks_[l]) || (l > 0 && !(breaks_[l] > breaks_[l - 1])))
            throw InputError("model: volatility breakpoints must be strictly ascending");
    }
    cumulative_.assign(etas_.size(), 0.0);
    for (std::size_t l = 1; l < etas_.size(); ++l) {
        const double e_left = std::exp(2.0 * a_ * breaks_[l - 1]);
        // e^{2ar} - e^{2al} = e^{2al} expm1(2a(r - l)) keeps precision for small a
        cumulative_[l] = cumulative_[l - 1] + etas_[l - 1] * etas_[l - 1] * e_left *
                                                  std::expm1(2.0 * a_ * (breaks_[l] - breaks_[l - 1]));
    }
}

double HullWhiteParams::eta_at(double s) const {
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
    const auto l = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - breaks_.begin() - 1, 0));
    return etas_[l];
}

double variance_factor(const HullWhiteParams& params, double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw InputError("model: variance factor needs a positive expiry");
    const double a = params.mean_reversion();
    const auto& breaks = params.vol_breakpoints();
    const auto& etas = params.vol_values();
    // segment holding theta; a breakpoint equal to theta closes the segment before it
    const auto q = static_cast<std::size_t>(
        std::lower_bound(breaks.begin(), breaks.end(), theta) - breaks.begin() - 1);
    const double left = breaks[q];
    const double partial =
        etas[q] * etas[q] * std::exp(2.0 * a * left) * std::expm1(2.0 * a * (theta - left));
    return (params.cumulative_variance(q) + partial) / (2.0 * a * a * a);
}

double bond_loading(double a, double from, double to) {
    // (e^{-a from} - e^{-a to}) / a = e^{-a from} (-expm1(-a (to - from))) / a
    return -std::exp(-a * from) * std::expm1(-a * (to - from)) / a;
}

double alpha(const HullWhiteParams& params, double theta, double t_i) {
    if (t_i < theta) throw InputError("model: alpha needs t_i >= theta");
    if (t_i == theta) return 0.0;
    const double a = params.mean_reversion();
    return a * bond_loading(a, theta, t_i) * std::sqrt(variance_factor(params, theta));
}

double tau(const HullWhiteParams& params, double theta, double t_0, double t_i) {
    if (t_0 < theta || t_i < t_0) throw InputError("model: tau needs theta <= t_0 <= t_i");
    if (t_i == t_0) return 0.0;
    const double a = params.mean_reversion();
    return a * bond_loading(a, t_0, t_i) * std::sqrt(variance_factor(params, theta));
}

namespace {

void check_schedule(double theta, std::span<const double> times) {
    if (times.empty()) throw InputError("model: empty schedule");
    if (times.front() < theta) throw InputError("model: schedule starts before expiry");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw InputError("model: schedule not ascending");
}

// (e^{-a from} - e^{-a times[i]}) * scale for all i, sharing e^{-a from}
void scaled_loadings(double a, double from, std::span<const double> times, double scale,
                     std::span<double> out) {
    if (out.size() != times.size()) throw InputError("model: output size mismatch");
    const double factor = -std::exp(-a * from) * scale;
    for (std::size_t i = 0; i < times.size(); ++i)
        out[i] = factor * std::expm1(-a * (times[i] - from)) + 0.0;  // no -0 at i = 0
}

std::vector<double> scaled_loadings(double a, double from, std::span<const double> times,
                                    double scale) {
    std::vector<double> out(times.size());
    scaled_loadings(a, from, times, scale, out);
    return out;
}

}  // namespace

void exercise_alphas(const HullWhiteParams& params, double theta, std::span<const double> times,
                     std::span<double> out) {
    check_schedule(theta, times);
    scaled_loadings(params.mean_reversion(), theta, times,
                    std::sqrt(variance_factor(params, theta)), out);
}

void period_taus(const HullWhiteParams& params, double theta, std::span<const double> times,
                 std::span<double> out) {
    check_schedule(theta, times);
    scaled_loadings(params.mean_reversion(), times.front(), times,
                    std::sqrt(variance_factor(params, theta)), out);
}

std::vector<double> exercise_alphas(const HullWhiteParams& params, double theta,
                                    std::span<const double> times) {
    std::vector<double> out(times.size());
    exercise_alphas(params, theta, times, out);
    return out;
}

std::vector<double> period_taus(const HullWhiteParams& params, double theta,
                                std::span<const double> times) {
    std::vector<double> out(times.size());
    period_taus(params, theta, times, out);
    return out;
}

VolCoefficients vol_coefficients(const HullWhiteParams& params, double theta,
                                 std::span<const double> times) {
    check_schedule(theta, times);
    const double a = params.mean_reversion();
    VolCoefficients out;
    out.variance_factor = variance_factor(params, theta);
    const double root_v = std::sqrt(out.variance_factor);
    out.h_factors = scaled_loadings(a, times.front(), times, 1.0 / a);
    out.taus = scaled_loadings(a, times.front(), times, root_v);
    out.alphas = scaled_loadings(a, theta, times, root_v);
    return out;
}

}  // namespace hwswpt
