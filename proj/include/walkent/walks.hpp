#pragma once

#include "walkent/graph.hpp"
#include "walkent/spectral.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace walkent {

using BigInt = boost::multiprecision::mpz_int;
using BigRational = boost::multiprecision::mpq_rational;
using BigVector = Vector<BigInt>;
using BigMatrix = Matrix<BigInt>;

/// Streams diag(A^l) for l = 0, 1, 2, ... exactly.
///
/// Only A^k for k <= ceil(l/2) is ever formed:
///   diag(A^{2k})_i   = sum_j (A^k)_ij^2
///   diag(A^{2k+1})_i = sum_j (A^k)_ij (A^{k+1})_ij
class ClosedWalkCounter {
public:
  explicit ClosedWalkCounter(const Graph& g);

  /// diag(A^l) for the next l, starting from l = 0.
  BigVector next();
  int next_length() const { return next_length_; }

private:
  void advance_power();

  const Graph* graph_;
  BigMatrix lower_;  // A^k
  BigMatrix upper_;  // A^(k+1)
  int lower_exponent_ = 0;
  int next_length_ = 0;
};

/// diag(A^l) for l = 0..max_length, one vector per length.
std::vector<BigVector> closed_walk_counts(const Graph& g, int max_length);

/// A^power exactly.
BigMatrix adjacency_power(const Graph& g, int power);

enum class DegreeMethod { clustered, exact };

/// Degree of the minimal polynomial of A. `clustered` counts distinct
/// Jacobi eigenvalues; `exact` derives the minimal polynomial over the
/// integers and checks it annihilates A.
int minimal_poly_degree(const Graph& g, DegreeMethod method = DegreeMethod::clustered);

enum class WalkMode { reduced, full, lp };

std::string to_string(WalkMode mode);
WalkMode walk_mode_from_string(const std::string& text);

class CostGuardError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Columns diag(A^l) for the mode's length set:
///   reduced  l = 2..m-1
///   full     l = 2..n-1
///   lp       l = 0 and l = 2..m-1
struct WalkMatrix {
  WalkMode mode;
  int degree;                // m
  std::vector<int> lengths;  // l for each column
  BigMatrix columns;         // n x lengths.size()

  Index rows() const { return columns.rows(); }
  Index cols() const { return columns.cols(); }
};

/// Full mode is refused above `full_mode_node_cap` nodes unless
/// `allow_large` is set.
inline constexpr Index full_mode_node_cap = 200;
WalkMatrix walk_matrix(const Graph& g, WalkMode mode, bool allow_large = false);

/// Lengths used by a mode for a graph with n nodes and degree m.
std::vector<int> walk_lengths(WalkMode mode, Index n, int degree);

/// Nodes grouped by identical closed-walk counts for l = 0..m-1. Class ids
/// are assigned in order of each class's smallest node.
struct WalkClassPartition {
  std::vector<int> class_of;
  std::vector<std::vector<Index>> classes;
  std::vector<BigVector> signature;  // diag(A^l)_rep for l = 0..m-1, per class
  int degree = 0;

  std::size_t count() const { return classes.size(); }
  Index representative(std::size_t c) const { return classes[c].front(); }
  std::vector<Index> sizes() const;
};

WalkClassPartition walk_classes(const Graph& g);

/// Partition from explicit per-length count vectors (used to check
/// refinement behaviour).
WalkClassPartition partition_by_counts(const std::vector<BigVector>& counts);

/// Stops at the first non-constant diag(A^l).
bool is_walk_regular(const Graph& g);

} // namespace walkent
