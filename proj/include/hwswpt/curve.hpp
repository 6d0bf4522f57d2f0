#pragma once

#include <span>
#include <vector>

namespace hwswpt {

/// Today's discount curve P(0,t).
///
/// Log-linear interpolation on discount factors between pillars (piecewise
/// constant forwards). Before the first pillar the curve interpolates
/// towards P(0,0) = 1; after the last pillar the continuously-compounded
/// zero rate is held constant. Immutable once built.
class DiscountCurve {
public:
    DiscountCurve(std::vector<double> pillar_times, std::vector<double> pillar_dfs);

    /// P(0,t) for t >= 0. Throws InputError on negative or non-finite t.
    double discount_factor(double t) const;

    /// P(0,t_i) for ascending times; one forward scan over the pillars.
    void discount_factors(std::span<const double> times, std::span<double> out) const;

    const std::vector<double>& pillar_times() const { return times_; }
    const std::vector<double>& pillar_dfs() const { return dfs_; }

private:
    double interpolate(double t, std::size_t hi) const;

    std::vector<double> times_;
    std::vector<double> dfs_;
    std::vector<double> log_dfs_;  // with an implicit (0, 0) node when times_[0] > 0
    std::vector<double> nodes_;
};

/// Validating factory; same as the constructor.
DiscountCurve build_curve(std::span<const double> pillar_times, std::span<const double> pillar_dfs);

/// Flat continuously-compounded curve with pillars at 0 and `horizon`.
DiscountCurve flat_curve(double rate, double horizon = 100.0);

}  // namespace hwswpt
