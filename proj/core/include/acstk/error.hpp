#pragma once

#include <stdexcept>
#include <string>

namespace acstk {

/// Bad input: malformed documents, violated preconditions, failed invariants.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical breakdown such as a near-singular I + L or a division by zero
/// inside an expression.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace acstk
