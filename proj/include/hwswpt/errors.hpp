#pragma once

#include <stdexcept>
#include <string>

namespace hwswpt {

/// Invalid or inconsistent input data (bad schedule, non-positive df, ...).
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed: no bracket, no convergence, unattainable target.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hwswpt
