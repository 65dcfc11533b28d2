#pragma once

#include "walkent/graph.hpp"
#include "walkent/walks.hpp"

#include <string>
#include <vector>

namespace walkent {

enum class Verdict { certified, infeasible_not_entropic, infeasible_subset, inconclusive };

std::string to_string(Verdict verdict);

struct CertifyOptions {
  WalkMode mode = WalkMode::lp;
  double tol_pos = 1e-9;   // t* must exceed this to certify
  double tol_feas = 1e-9;  // phase-one and residual threshold
  double upper = 1e3;      // bound on each normalised variable
  bool allow_large = false;
};

/// Outcome of solving W_J x = e with x > 0, where J holds one
/// representative row per requested walk-class.
struct CollisionCertificate {
  Verdict verdict = Verdict::inconclusive;
  WalkMode mode = WalkMode::lp;
  std::vector<int> lengths;     // l of each column
  std::vector<int> classes;     // walk-class ids covered
  std::vector<Index> rows;      // representative node per class
  bool all_classes = false;
  Vector<double> x;             // solution in column-normalised space
  Vector<double> scaling;       // column divisors (max of each column over J)
  double margin = 0.0;          // t* = min x
  double residual = 0.0;        // max |W_J x - e| in normalised space
  double exact_spread = 0.0;    // relative spread of sum (x_l/scale_l) diag(A^l) over J
  bool feasible = false;

  /// x_l / scale_l, the coefficients for the unscaled walk counts.
  Vector<double> unscaled() const;
};

/// LP core of certify_collision for an explicit nonnegative system
/// W x = e: columns are divided by their maxima, then
/// max t s.t. W x = e, x >= t, 0 <= x <= upper is solved.
struct PositiveSystemSolution {
  bool feasible = false;
  Vector<double> x;        // normalised space
  Vector<double> scaling;  // column divisors
  double margin = 0.0;
  double residual = 0.0;
  double exact_spread = 0.0;  // relative spread of W (x / scaling) over the rows
};

PositiveSystemSolution solve_positive_system(const BigMatrix& w,
                                             const CertifyOptions& options = {});

/// certified needs margin > tol_pos and an accurate solution; an
/// infeasible system is not-entropic when it covers every class.
Verdict classify(const PositiveSystemSolution& solution, bool all_classes,
                 const CertifyOptions& options = {});

/// `classes` empty means every walk-class.
CollisionCertificate certify_collision(const Graph& g, const std::vector<int>& classes = {},
                                       const CertifyOptions& options = {});

/// Truncated series with positive coefficients whose diagonal is constant
/// on the certified classes.
struct PpscConstruction {
  std::vector<double> coefficients;  // c_0..c_K
  int degree = 0;                    // m
  int truncation = 0;                // K
  int halvings = 0;
  double tail_bound = 0.0;   // bound on the diagonal of sum_{k>K} c_k A^k
  double spread = 0.0;       // relative spread of diag(sum_{k<=K} c_k A^k) over J
  double allowed_spread = 0.0;
  bool constant = false;
};

/// Builds c_k from a certificate via the minimal-polynomial reduction
/// A^k = sum_{j<m} p_{k,j} A^j. Missing x_0 / x_1 (reduced mode) are filled
/// with positive values: diag(I) and diag(A) are constant. Throws
/// std::invalid_argument if K is below the degree or the highest length
/// used, and std::runtime_error if 200 halvings do not make the head
/// coefficients positive.
PpscConstruction construct_ppsc_coefficients(const Graph& g,
                                             const CollisionCertificate& certificate,
                                             int truncation);

} // namespace walkent
