#pragma once

#include <stdexcept>
#include <string>

namespace feq {

/// Input or configuration violates a documented invariant. The CLI maps this
/// to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation could not produce a trustworthy result (non-convergence,
/// bracket failure, ...). The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation too close to a pole of a perturbative formula.
class SingularityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Root bracketing failed: the requested target is not reachable.
class BracketError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace feq
