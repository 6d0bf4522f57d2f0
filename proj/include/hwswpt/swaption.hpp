#pragma once

#include <vector>

#include "hwswpt/curve.hpp"

namespace hwswpt {

enum class Side { payer, receiver };

inline double side_sign(Side s) { return s == Side::payer ? 1.0 : -1.0; }
const char* to_string(Side s);
Side parse_side(const char* text);

struct CashFlow {
    double time;
    double amount;
};

/// European swaption on a fixed-for-floating swap, held in bond-option form:
/// flow -1 at settlement t_0, coupons delta_i * R_K at t_i and the redemption
/// added to the last coupon.
class SwaptionSpec {
public:
    SwaptionSpec(double expiry, double settlement, std::vector<double> pay_times,
                 std::vector<double> accruals, double strike_rate, Side side,
                 double notional = 1.0);

    double expiry() const { return expiry_; }
    double settlement() const { return settlement_; }
    const std::vector<double>& pay_times() const { return pay_times_; }
    const std::vector<double>& accruals() const { return accruals_; }
    double strike_rate() const { return strike_rate_; }
    Side side() const { return side_; }
    double notional() const { return notional_; }
    std::size_t periods() const { return pay_times_.size(); }

    /// Same schedule, different strike rate / side.
    SwaptionSpec with_strike(double strike_rate) const;
    SwaptionSpec with_side(Side side) const;

private:
    double expiry_;
    double settlement_;
    std::vector<double> pay_times_;
    std::vector<double> accruals_;
    double strike_rate_;
    Side side_;
    double notional_;
};

/// Regular schedule: `tenor` years starting at `settlement`, `freq` periods a year.
SwaptionSpec make_swaption(double expiry, double tenor, int freq, double strike_rate, Side side,
                           double notional = 1.0, double settlement_lag = 0.0);

/// (t_0, -1), (t_i, delta_i R_K), ..., (t_n, delta_n R_K + 1).
std::vector<CashFlow> cash_flows(const SwaptionSpec& spec);

/// Sum_i delta_i P(0, t_i).
double annuity(const DiscountCurve& curve, const SwaptionSpec& spec);

/// (P(0,t_0) - P(0,t_n)) / annuity.
double forward_swap_rate(const DiscountCurve& curve, const SwaptionSpec& spec);

/// Sum_{i=0..n} c_i P(0,t_i): today's value of the receiver swap per unit notional.
double swap_value(const DiscountCurve& curve, const SwaptionSpec& spec);

}  // namespace hwswpt
