#pragma once

#include <stdexcept>
#include <string>

namespace conic {

// Dimension mismatch, non-square or asymmetric input.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Integer/structural parameter outside its admissible range (s > d, k > d, ...).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Real argument outside the domain of a formula (delta <= 1, xi >= 1/2, rho outside (0,1), ...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Operation asked of a cone variant that does not support it.
struct CapabilityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Root bracket without a sign change.
struct BracketError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Iterative method exceeded its divergence guard (non-coercive objective, ...).
struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Moment estimates too degenerate to use (delta_hat <= 0, tau_sq <= 0 where required).
struct DegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Documented invariant violated by the caller (tau^2 > 2 delta, ...).
struct InvariantError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace conic
