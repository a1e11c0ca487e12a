#pragma once

#include <stdexcept>
#include <string>

namespace modelspec {

/// A caller-supplied value violates an operation precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure (integration, bracketing, quadrature) failed.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A checked mathematical property (ordering, inequality) does not hold.
class PropertyViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
    if (!cond) throw InvalidArgument(what);
}

} // namespace detail
} // namespace modelspec
