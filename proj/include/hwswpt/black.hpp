#pragma once

namespace hwswpt {

enum class Parity { call, put };

/// Standard normal cumulative distribution, accurate to machine precision in
/// both tails.
double normal_cdf(double x);
double normal_pdf(double x);

/// Inverse of normal_cdf on (0, 1).
double inverse_normal_cdf(double p);

/// Black-76 price. `total_vol` is sigma * sqrt(T); `numeraire_value` is the
/// discounting numeraire (annuity for swaptions, P(0,T) for caplets...).
double black_price(double forward, double strike, double total_vol, double numeraire_value,
                   Parity parity);

/// d price / d total_vol.
double black_vega(double forward, double strike, double total_vol, double numeraire_value);

/// Annualized Black volatility reproducing `price`.
///
/// Throws InputError when the price is outside the open no-arbitrage interval
/// and NumericError if the iteration does not settle within 100 steps.
double implied_black_vol(double price, double forward, double strike, double expiry,
                         double numeraire_value, Parity parity);

}  // namespace hwswpt
