#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hwswpt/curve.hpp"
#include "hwswpt/hw_model.hpp"
#include "hwswpt/swaption.hpp"

namespace hwswpt {

enum class Method { exact, freeze, corrector };
const char* to_string(Method m);

enum class StrikeStateMode { exponential, first_order };

/// Price and diagnostics of one swaption valuation. Prices are in currency
/// units (scaled by notional); everything else is per unit notional in the
/// bond-option convention with strike K = 1.
struct PricingResult {
    double price = 0.0;
    Method method = Method::exact;
    Side side = Side::receiver;
    /// kappa for the exact formula, kappa or kappa_K for the approximations.
    double kappa = 0.0;
    /// sigma_0 (freeze) or sigma_K (corrector); unset for the exact formula.
    std::optional<double> aggregate_vol;
    /// x-bar, corrector only.
    std::optional<double> strike_state;
    /// alpha_0^i and alpha_K^i for i = 1..n where applicable.
    std::vector<double> freeze_weights;
    std::vector<double> strike_weights;
    double bond_forward = 0.0;
    double strike = 1.0;
    /// first-order strike state gave a non-positive P_K^i and the exponential
    /// equation was solved instead.
    bool used_exponential_fallback = false;
    double elapsed = 0.0;
};

/// Exercise boundary: root of sum_i d_i exp(-alpha_i^2/2 - alpha_i kappa) = 0
/// with d_i = c_i P(0, t_i).
double solve_kappa(std::span<const double> discounted_flows, std::span<const double> alphas);

/// Exact Hull-White receiver / payer price as a sum of n + 1 normal probabilities.
PricingResult price_exact(const DiscountCurve& curve, const HullWhiteParams& params,
                          const SwaptionSpec& spec);

struct FreezeWeights {
    double bond_forward = 0.0;            // B_0
    std::vector<double> forward_bonds;    // P_0^i, i = 0..n (P_0^0 = 1)
    std::vector<double> weights;          // alpha_0^i, i = 1..n
    double settlement_df = 0.0;           // P(0, t_0)
};

/// Time-0 weights of each flow in the forward coupon bond B_0.
FreezeWeights freeze_weights(const DiscountCurve& curve, const SwaptionSpec& spec);

/// sum_i w_i tau_i. `taus` may carry the leading tau_0 entry (then it is one
/// longer than `weights` and skipped).
double period_vol(std::span<const double> weights, std::span<const double> taus);

/// Black-type price with the volatility frozen at its initial value.
PricingResult price_initial_freeze(const DiscountCurve& curve, const HullWhiteParams& params,
                                   const SwaptionSpec& spec);

/// Common Gaussian state at which the swap is at the money at expiry.
///
/// `discounted_flows` are c_i P_0^i for i = 0..n with the first entry -K,
/// `taus` include tau_0 = 0.
double solve_strike_state(std::span<const double> discounted_flows, std::span<const double> taus,
                          StrikeStateMode mode);

struct CorrectorWeights {
    std::vector<double> strike_bonds;  // P_K^i, i = 0..n
    double bond_at_strike = 0.0;       // B_K
    std::vector<double> weights;       // alpha_K^i, i = 1..n
};

/// Bond prices and weights at the strike state. Throws NumericError if the
/// first-order state makes any P_K^i non-positive.
CorrectorWeights corrector_weights(const DiscountCurve& curve, const SwaptionSpec& spec,
                                   std::span<const double> taus, double strike_state,
                                   StrikeStateMode mode);

/// Initial freeze plus strike-state corrector on the volatility weights.
PricingResult price_corrector(const DiscountCurve& curve, const HullWhiteParams& params,
                              const SwaptionSpec& spec,
                              StrikeStateMode mode = StrikeStateMode::first_order);

PricingResult price(Method method, const DiscountCurve& curve, const HullWhiteParams& params,
                    const SwaptionSpec& spec);

}  // namespace hwswpt
