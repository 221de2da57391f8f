#pragma once

#include <stdexcept>
#include <string>

namespace sourcelab {

// Adaptive quadrature failed to converge within its refinement budget.
// Carries the last two estimates so callers can judge how far apart they are.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double previous, double last)
      : std::runtime_error(what), previous_estimate(previous), last_estimate(last) {}

  double previous_estimate;
  double last_estimate;
};

// Numerical failure during time stepping or a downstream solve (blow-up,
// boundary contamination, ill-conditioned implicit relation).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sourcelab
