#pragma once

#include "walkent/entropy.hpp"
#include "walkent/spectral.hpp"

#include <array>
#include <vector>

namespace walkent {

/// Closed-form spectrum of kks_graph(c, m): m copies of K_c, each perfectly
/// matched to a shared independent set of size c.
struct KksSpectrum {
  int c = 0;
  int m = 0;
  /// lambda[0..5] hold lambda_1..lambda_6.
  std::array<double, 6> lambda{};
  std::array<Index, 6> multiplicity{};
  double gamma = 0.0;  // sqrt(4m + 1)
  /// c x (c-1) orthonormal basis of the complement of the all-ones vector.
  Matrix<double> householder;

  /// lambda_1 > ... > lambda_6, which holds when c < m < c^2 - c.
  bool strictly_ordered() const;
};

KksSpectrum kks_spectrum(int c, int m);

/// Columns n_2..n_c with n_j = e_j + (sqrt(c) e_1 - e) / (c - sqrt(c)).
/// Empty (c x 0) for c = 1.
Matrix<double> householder_basis(int c);

struct KksEigenbasis {
  Matrix<double> vectors;
  Vector<double> values;
  std::vector<int> labels;  // 1..6, one per column
  double eigen_residual = 0.0;  // max |AV - V Lambda|
  double orthogonality_residual = 0.0;  // max |V^T V - I|
  bool ok = false;  // both residuals below 1e-10
};

/// Assembles the four eigenvector blocks explicitly and checks them against
/// the constructed adjacency matrix. Columns are grouped by label.
KksEigenbasis kks_eigenbasis(int c, int m);

struct KksScores {
  double independent;  // exp(beta A)_jj on the independent set
  double clique;  // exp(beta A)_jj on a clique node
};

KksScores kks_scores(double beta, int c, int m);

/// The four pieces h1, h2, g1, g2 used to compare the clique and
/// independent-set scores, plus the (1 - 1/c)(lambda_3, lambda_6) term that
/// both clique-score pieces leave out and g2 subtracts from the
/// independent-set score. With it, h1 + h2 + shared = clique and
/// g1 + g2 + shared = independent.
struct KksPieces {
  double h1;
  double h2;
  double g1;
  double g2;
  double shared;
};

KksPieces kks_pieces(double beta, int c, int m);

/// clique - independent, written as sum_t (e^{beta lambda_t} - 1 - beta lambda_t)
/// times the difference of the per-eigenvalue weights. The weights of both
/// rows sum to one and have equal first moments, so this matches the
/// difference of kks_scores without cancelling at small beta.
double kks_score_difference(double beta, int c, int m);

struct GammaIdentities {
  std::array<double, 4> lhs;
  std::array<double, 4> rhs;
  double max_error() const;
};

/// (l3+1)^2/((l3+1)^2+m), (l6+1)^2/((l6+1)^2+m), 1/((l3+1)^2+m),
/// 1/((l6+1)^2+m) against their expressions in gamma.
GammaIdentities gamma_identities(int c, int m);

enum class KksBetaStatus { found, no_sign_change };

struct KksBetaResult {
  KksBetaStatus status = KksBetaStatus::found;
  int c = 0;
  int m = 0;
  EntropicValue value{};
  double delta_at_lo = 0.0;  // clique - independent at 1e-9
  double delta_at_hi = 0.0;  // at 1 / (c - 2)
};

inline constexpr double kks_bracket_floor = 1e-9;

/// Root of clique - independent on (1e-9, 1/(c-2)] for kks(c, c+1).
/// Requires c >= 3.
KksBetaResult find_entropic_beta_kks(int c);

/// Smallest c >= 3 for which the clique score exceeds the independent-set
/// score at beta = 1/(c-2) with m = c+1. Throws if none up to c_max.
int kks_entropic_threshold(int c_max = 1000);

struct HyperbolicReport {
  double beta;
  double gamma;
  double xi;  // beta gamma / 2
  double cosh_lhs;
  double cosh_rhs;
  double sinh_lhs;
  double sinh_rhs;

  double cosh_margin() const { return cosh_lhs - cosh_rhs; }
  double sinh_margin() const { return sinh_lhs - sinh_rhs; }
};

/// Both sides of the cosh and sinh inequalities. Requires
/// beta = 1/(c-2) and m = c+1.
HyperbolicReport hyperbolic_check(double beta, int c, int m);

} // namespace walkent
