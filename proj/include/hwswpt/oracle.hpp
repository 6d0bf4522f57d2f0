#pragma once

#include <cstdint>

#include "hwswpt/curve.hpp"
#include "hwswpt/hw_model.hpp"
#include "hwswpt/swaption.hpp"

namespace hwswpt {

struct OracleConfig {
    int quad_points = 201;
    long mc_paths = 100000;
    std::uint64_t mc_seed = 42;
};

/// Reference price by direct integration over the terminal Gaussian state.
///
/// Works in the t_0-forward measure: each rebased bond at expiry is
/// P_0^i exp(-tau_i X - tau_i^2/2) with one common standard normal X, and
/// tau_i is obtained by numerically integrating (nu(s,t_i) - nu(s,t_0))^2
/// over [0, theta]. None of the closed-form coefficient code is used. The
/// payoff kink is located by bisection and each side is integrated with
/// Gauss-Legendre, doubling the node count until two successive results agree
/// to 1e-11 relative.
double quadrature_price(const DiscountCurve& curve, const HullWhiteParams& params,
                        const SwaptionSpec& spec, const OracleConfig& config = {});

struct MonteCarloEstimate {
    double price = 0.0;
    double std_error = 0.0;
};

/// Antithetic Monte Carlo over the same terminal distribution.
///
/// Paths are drawn in fixed batches of 2^14; batch b uses an mt19937_64
/// seeded from (mc_seed, b), and normals come from the inverse normal CDF, so
/// results are bit-reproducible for a given seed.
MonteCarloEstimate mc_price(const DiscountCurve& curve, const HullWhiteParams& params,
                            const SwaptionSpec& spec, const OracleConfig& config = {});

}  // namespace hwswpt
