#pragma once

#include "walkent/walks.hpp"

#include <vector>

namespace walkent {

using RationalMatrix = Matrix<BigRational>;
using RationalVector = Vector<BigRational>;

RationalMatrix to_rational(const BigMatrix& m);

inline constexpr Index saff_default_cap = 14;
inline constexpr int saff_copy_cap = 3;

/// Search result for the set-average flip-flop property. A counterexample
/// is reported with S the side whose average is strictly larger in every
/// column, ready for farkas_refutation.
struct SaffResult {
  bool satisfied = true;
  std::vector<Index> s;  // row indices of M
  std::vector<Index> t;
  Index distinct_rows = 0;
  int copy_cap = saff_copy_cap;
};

/// Exhaustive search over disjoint multisets of distinct rows, each row
/// used at most min(count, 3) times across S and T. Throws CostGuardError
/// above `size_cap` distinct rows unless `allow_large`.
SaffResult saff_check(const RationalMatrix& m, Index size_cap = saff_default_cap,
                      bool allow_large = false);
SaffResult saff_check(const BigMatrix& m, Index size_cap = saff_default_cap,
                      bool allow_large = false);

struct FarkasRefutation {
  std::vector<Index> s;
  std::vector<Index> t;
  BigRational delta;
  RationalVector y;
  RationalVector y_times_m;  // y^T M
  BigRational y_times_e;     // y^T e
  bool valid = false;        // y^T M >= 0 and y^T e = -delta < 0
};

/// Requires avg(M(T,j)) < avg(M(S,j)) and avg(M(T,j)) > 0 for every column;
/// throws PreconditionError otherwise.
FarkasRefutation farkas_refutation(const RationalMatrix& m, const std::vector<Index>& s,
                                   const std::vector<Index>& t);
FarkasRefutation farkas_refutation(const BigMatrix& m, const std::vector<Index>& s,
                                   const std::vector<Index>& t);

} // namespace walkent
