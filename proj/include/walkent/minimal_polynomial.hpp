#pragma once

#include "walkent/graph.hpp"
#include "walkent/walks.hpp"

#include <vector>

namespace walkent {

/// Monic integer polynomial x^m + a_{m-1} x^{m-1} + ... + a_0, stored as
/// coefficients a_0..a_{m-1}, 1.
struct IntegerPolynomial {
  std::vector<BigInt> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

/// Minimal polynomial of the adjacency matrix, computed exactly.
///
/// The Krylov sequence of a fixed dense probe vector is reduced over the
/// rationals until the first linear dependency; the resulting polynomial is
/// accepted only if it annihilates A exactly. If the probe misses part of
/// the spectrum, the dependency among vec(A^0), vec(A^1), ... is used
/// instead.
IntegerPolynomial minimal_polynomial(const Graph& g);

/// p(A) == 0, checked with exact Horner evaluation.
bool annihilates(const IntegerPolynomial& p, const Graph& g);

/// Rows k = m..max_power of the reduction A^k = sum_{j<m} p_{k,j} A^j.
/// Row i of the result holds p_{m+i, 0..m-1}.
std::vector<std::vector<BigInt>> power_reduction(const IntegerPolynomial& p,
                                                 int max_power);

} // namespace walkent
