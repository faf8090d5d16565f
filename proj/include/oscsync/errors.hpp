#pragma once

#include <stdexcept>
#include <string>

namespace oscsync {

// Operand shapes do not match (graph sizes, vector lengths, matrix dims).
struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An iterative kernel failed to converge within its iteration cap.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A structural precondition on the coupling graphs is violated.
struct structural_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Two routes that must agree by theory disagreed; indicates a tolerance
// or kernel bug, never a property of the input network.
struct consistency_error : std::logic_error {
  using std::logic_error::logic_error;
};

// Integrator produced a non-finite state.
struct divergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace oscsync
