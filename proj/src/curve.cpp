#include "hwswpt/curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hwswpt/errors.hpp"

namespace hwswpt {

DiscountCurve::DiscountCurve(std::vector<double> pillar_times, std::vector<double> pillar_dfs)
    : times_(std::move(pillar_times)), dfs_(std::move(pillar_dfs)) {
    if (times_.size() != dfs_.size())
        throw InputError("curve: times and dfs differ in length");
    if (times_.size() < 2)
        throw InputError("curve: at least two pillars required");
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (!std::isfinite(times_[i]) || !std::isfinite(dfs_[i]))
            throw InputError("curve: non-finite pillar");
        if (!(dfs_[i] > 0.0))
            throw InputError("curve: discount factor at pillar " + std::to_string(i) +
                             " is not positive");
        if (i > 0 && !(times_[i] > times_[i - 1]))
            throw InputError("curve: pillar times must be strictly ascending");
    }
    if (times_.front() < 0.0)
        throw InputError("curve: first pillar time is negative");
    if (times_.front() == 0.0 && dfs_.front() != 1.0)
        throw InputError("curve: discount factor at t = 0 must be 1");

    if (times_.front() > 0.0) {
        nodes_.push_back(0.0);
        log_dfs_.push_back(0.0);
    }
    for (std::size_t i = 0; i < times_.size(); ++i) {
        nodes_.push_back(times_[i]);
        log_dfs_.push_back(std::log(dfs_[i]));
    }
}

double DiscountCurve::interpolate(double t, std::size_t hi) const {
    // nodes_[hi - 1] <= t < nodes_[hi]
    const std::size_t lo = hi - 1;
    if (t == nodes_[lo]) {
        const std::size_t offset = nodes_.size() - times_.size();
        if (lo >= offset) return dfs_[lo - offset];
    }
    const double w = (t - nodes_[lo]) / (nodes_[hi] - nodes_[lo]);
    return std::exp(log_dfs_[lo] + w * (log_dfs_[hi] - log_dfs_[lo]));
}

double DiscountCurve::discount_factor(double t) const {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw InputError("curve: discount factor requested at invalid time " + std::to_string(t));
    if (t == 0.0) return 1.0;

    const double last = nodes_.back();
    if (t >= last) {
        if (t == last) return dfs_.back();
        return std::exp(log_dfs_.back() * (t / last));
    }
    // first node strictly greater than t; always exists and is not nodes_[0]
    const auto hi = static_cast<std::size_t>(
        std::upper_bound(nodes_.begin(), nodes_.end(), t) - nodes_.begin());
    return interpolate(t, hi);
}

void DiscountCurve::discount_factors(std::span<const double> times, std::span<double> out) const {
    if (times.size() != out.size()) throw InputError("curve: output size mismatch");
    std::size_t hi = 1;
    double prev = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        if (!(t >= prev) || !std::isfinite(t)) {
            out[i] = discount_factor(t);  // throws on bad input; handles unsorted input too
            continue;
        }
        prev = t;
        if (t == 0.0) {
            out[i] = 1.0;
        } else if (t >= nodes_.back()) {
            out[i] = t == nodes_.back() ? dfs_.back() : std::exp(log_dfs_.back() * (t / nodes_.back()));
        } else {
            while (nodes_[hi] <= t) ++hi;
            out[i] = interpolate(t, hi);
        }
    }
}

DiscountCurve build_curve(std::span<const double> pillar_times, std::span<const double> pillar_dfs) {
    return DiscountCurve({pillar_times.begin(), pillar_times.end()},
                         {pillar_dfs.begin(), pillar_dfs.end()});
}

DiscountCurve flat_curve(double rate, double horizon) {
    return DiscountCurve({0.0, horizon}, {1.0, std::exp(-rate * horizon)});
}

}  // namespace hwswpt
