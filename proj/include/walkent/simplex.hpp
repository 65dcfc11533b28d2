#pragma once

#include "walkent/spectral.hpp"

namespace walkent {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Vector<double> x;
  double objective = 0.0;
  double phase_one_residual = 0.0;  // sum of artificials at the end of phase 1
  int pivots = 0;
};

/// Dense two-phase simplex with Bland's rule for
///   maximise c^T x  subject to  A x = b, x >= 0.
/// `tol` is the pivot and feasibility threshold.
LpResult simplex_maximize(const Matrix<double>& a, const Vector<double>& b,
                          const Vector<double>& c, double tol = 1e-9);

} // namespace walkent
