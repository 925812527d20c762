#pragma once
#include <stdexcept>

namespace tmsv {

// Convergence / accuracy failures: cutoff too small, quadrature disagreement,
// non-convergent refinement.  Contract violations use std::invalid_argument.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tmsv
