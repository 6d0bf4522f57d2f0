#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hwswpt {

/// Hull-White one-factor parameters: constant mean reversion `a` and a
/// piecewise-constant short-rate volatility eta(s).
///
/// `vol_values[l]` applies on [vol_breakpoints[l], vol_breakpoints[l+1]); the
/// last value extends to infinity. The first breakpoint is always 0.
class HullWhiteParams {
public:
    static constexpr double min_mean_reversion = 1e-6;

    HullWhiteParams(double mean_reversion, std::vector<double> vol_breakpoints,
                    std::vector<double> vol_values);

    static HullWhiteParams constant(double mean_reversion, double eta) {
        return HullWhiteParams(mean_reversion, {0.0}, {eta});
    }

    double mean_reversion() const { return a_; }
    const std::vector<double>& vol_breakpoints() const { return breaks_; }
    const std::vector<double>& vol_values() const { return etas_; }

    /// eta(s) for s >= 0.
    double eta_at(double s) const;

    HullWhiteParams with_vol_values(std::vector<double> values) const {
        return HullWhiteParams(a_, breaks_, std::move(values));
    }

    /// sum over whole segments below breakpoint l of eta^2 (e^{2a s_{j+1}} - e^{2a s_j}).
    double cumulative_variance(std::size_t l) const { return cumulative_[l]; }

private:
    double a_;
    std::vector<double> breaks_;
    std::vector<double> etas_;
    std::vector<double> cumulative_;
};

/// V(theta) = int_0^theta eta(s)^2 e^{2as} ds / a^2, evaluated segment-wise as
/// sum_l eta_l^2 (e^{2a r_{l+1}} - e^{2a r_l}) / (2a^3) on the grid clipped at theta.
double variance_factor(const HullWhiteParams& params, double theta);

/// (e^{-a from} - e^{-a to}) / a, the loading of the to-bond relative to the from-bond.
double bond_loading(double a, double from, double to);

/// Exercise-measure volatility of the t_i bond relative to the theta bond.
double alpha(const HullWhiteParams& params, double theta, double t_i);

/// Volatility over [0, theta] of the t_i bond relative to the t_0 bond.
double tau(const HullWhiteParams& params, double theta, double t_0, double t_i);

/// Coefficients for a full schedule t_0 < t_1 < ... < t_n.
///
/// Index 0 refers to t_0, so taus[0] == 0 and h_factors[0] == 0. In the one
/// factor model nu^i(t) = H_i g(t) with g(t) = eta(t) e^{at}, and
/// int_0^theta g^2 = a^2 V(theta), hence tau_i = a H_i sqrt(V).
struct VolCoefficients {
    std::vector<double> alphas;
    std::vector<double> taus;
    std::vector<double> h_factors;
    double variance_factor = 0.0;
};

/// alpha_i for every time in `times` (each >= theta).
std::vector<double> exercise_alphas(const HullWhiteParams& params, double theta,
                                    std::span<const double> times);

/// tau_i relative to times[0] = t_0; the first entry is 0.
std::vector<double> period_taus(const HullWhiteParams& params, double theta,
                                std::span<const double> times);

// Allocation-free forms writing into `out` (same length as `times`).
void exercise_alphas(const HullWhiteParams& params, double theta, std::span<const double> times,
                     std::span<double> out);
void period_taus(const HullWhiteParams& params, double theta, std::span<const double> times,
                 std::span<double> out);

VolCoefficients vol_coefficients(const HullWhiteParams& params, double theta,
                                 std::span<const double> times);

}  // namespace hwswpt
