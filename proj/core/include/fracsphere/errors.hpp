#pragma once

#include <stdexcept>

namespace fracsphere {

/// Singular quadrature failed to converge under refinement (e.g. a
/// non-integrable Funk-Hecke kernel).
class QuadratureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Minimizer stalled above the gradient tolerance.
class SolverDivergence : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace fracsphere
