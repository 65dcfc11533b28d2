#pragma once

#include "walkent/graph.hpp"
#include "walkent/spectral.hpp"
#include "walkent/walks.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace walkent {

/// Thrown when an operation's input does not meet its stated preconditions;
/// the message says which one.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Shannon entropy (natural log) of the scores normalised to sum to one.
double walk_entropy(const Vector<double>& scores);
double walk_entropy(const Graph& g, const PpscFunction& f, double beta);

/// A parameter value at which f(beta A) has (numerically) constant diagonal.
struct EntropicValue {
  double beta;
  double lo;
  double hi;
  double gap;
  std::string function;
};

struct ScanOptions {
  double beta_max = 3.0;
  double grid_step = 0.01;
  double tol = 1e-10;
};

enum class ScanStatus { scanned, walk_regular, disconnected };

struct ScanResult {
  ScanStatus status = ScanStatus::scanned;
  std::size_t class_count = 0;
  /// Roots whose constant-diagonal gap is below tol.
  std::vector<EntropicValue> values;
  /// Brackets that refined to a pairwise collision but not a confirmed one
  /// (only possible with three or more walk-classes).
  std::vector<EntropicValue> candidates;
};

/// Scans beta over the grid (0, beta_max] for sign changes of the score
/// difference between walk-classes and refines each by bisection.
ScanResult scan_entropic_values(const Graph& g, const PpscFunction& f,
                                const ScanOptions& options = {});

struct CartesianReport {
  bool product_connected = false;
  bool product_non_walk_regular = false;
  double product_gap = 0.0;
  double kronecker_error = 0.0;
  bool passed = false;
};

/// Checks that G box H is entropic at beta0 given that exp(beta0 A_G) and
/// exp(beta0 A_H) both have constant diagonal. Throws PreconditionError
/// naming the violated precondition.
CartesianReport verify_cartesian_entropic(const Graph& g, const Graph& h,
                                          double beta0, double tol);

/// Truncated series f(x) = sum_k c_k x^k with c_0 = 1, c_1 = beta0 and
/// c_k = (beta0^k / k!) / C_H(k), where C_H(k) is the constant diagonal of
/// A_H^k.
struct TensorFunction {
  PpscFunction function;
  std::vector<BigInt> walk_constants;  // C_H(k), k = 0..K
  int truncation = 0;
  double tail_bound = 0.0;  // sum_{k>K} (beta0 lambda_max(G))^k / k!
};

inline constexpr double tensor_tail_target = 1e-14;

/// `truncation <= 0` picks the smallest K meeting the tail target.
TensorFunction build_tensor_function(const Graph& g, double beta0, const Graph& h,
                                     int truncation = 0, double tol = 1e-9);

struct TensorReport {
  TensorFunction function;
  Index product_size = 0;
  double separable_gap = 0.0;
  std::optional<double> direct_gap;
  std::optional<double> separable_vs_direct;
  double allowed_gap = 0.0;  // tol + tail bound relative to the mean score
  bool product_connected = false;
  bool product_non_walk_regular = false;
  bool passed = false;
};

/// Evaluates the tensor function on G (x) H through the separable identity
/// and, for products with at most `direct_limit` nodes, by explicit matrix
/// powers of the product adjacency.
TensorReport verify_tensor_entropic(const Graph& g, double beta0, const Graph& h,
                                    int truncation = 0, double tol = 1e-9,
                                    Index direct_limit = 60);

} // namespace walkent
