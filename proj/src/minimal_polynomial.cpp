#include "walkent/minimal_polynomial.hpp"

#include <optional>
#include <stdexcept>

namespace walkent {

namespace {

// Gaussian elimination over Q, one vector at a time, remembering how each
// reduced row is built from the inputs.
class DependencyFinder {
public:
  /// Returns the coefficients (over inputs 0..t, last one 1) of the first
  /// linear dependency, or nothing if the new vector is independent.
  std::optional<std::vector<BigRational>> add(std::vector<BigRational> v) {
    const std::size_t t = inputs_++;
    std::vector<BigRational> combo(t + 1);
    combo[t] = 1;
    for (const auto& row : basis_) {
      if (v[row.pivot] == 0) continue;
      const BigRational factor = v[row.pivot] / row.values[row.pivot];
      for (std::size_t i = 0; i < v.size(); ++i)
        if (row.values[i] != 0) v[i] -= factor * row.values[i];
      for (std::size_t s = 0; s < row.combo.size(); ++s)
        if (row.combo[s] != 0) combo[s] -= factor * row.combo[s];
    }
    std::size_t pivot = 0;
    while (pivot < v.size() && v[pivot] == 0) ++pivot;
    if (pivot == v.size()) return combo;
    basis_.push_back({std::move(v), pivot, std::move(combo)});
    return std::nullopt;
  }

private:
  struct Row {
    std::vector<BigRational> values;
    std::size_t pivot;
    std::vector<BigRational> combo;
  };
  std::vector<Row> basis_;
  std::size_t inputs_ = 0;
};

std::optional<IntegerPolynomial> to_integer(const std::vector<BigRational>& combo) {
  IntegerPolynomial p;
  for (const auto& c : combo) {
    if (denominator(c) != 1) return std::nullopt;
    p.coefficients.push_back(numerator(c));
  }
  return p;
}

BigMatrix times_adjacency(const BigMatrix& p, const Graph& g) {
  BigMatrix out = BigMatrix::Zero(p.rows(), p.cols());
  for (Index i = 0; i < g.size(); ++i)
    for (Index j : g.neighbours()[static_cast<std::size_t>(i)])
      for (Index r = 0; r < p.rows(); ++r) out(r, i) += p(r, j);
  return out;
}

std::optional<IntegerPolynomial> krylov_polynomial(const Graph& g) {
  const Index n = g.size();
  BigVector v(n);
  for (Index i = 0; i < n; ++i)
    v(i) = 1 + static_cast<long>((static_cast<unsigned long long>(i + 1) *
                                  2654435761ULL % 1000003ULL) % 1000ULL);
  DependencyFinder finder;
  for (Index t = 0; t <= n; ++t) {
    std::vector<BigRational> entries(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) entries[static_cast<std::size_t>(i)] = BigRational(v(i));
    if (auto combo = finder.add(std::move(entries))) return to_integer(*combo);
    BigVector next = BigVector::Zero(n);
    for (Index i = 0; i < n; ++i)
      for (Index j : g.neighbours()[static_cast<std::size_t>(i)]) next(i) += v(j);
    v = std::move(next);
  }
  return std::nullopt;
}

IntegerPolynomial matrix_polynomial(const Graph& g) {
  const Index n = g.size();
  DependencyFinder finder;
  BigMatrix power = adjacency_power(g, 0);
  for (Index t = 0; t <= n; ++t) {
    std::vector<BigRational> entries;
    entries.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i <= j; ++i) entries.emplace_back(power(i, j));
    if (auto combo = finder.add(std::move(entries))) {
      if (auto p = to_integer(*combo)) return *p;
      break;
    }
    power = times_adjacency(power, g);
  }
  throw std::runtime_error("minimal_polynomial: no integer annihilating polynomial found");
}

} // namespace

bool annihilates(const IntegerPolynomial& p, const Graph& g) {
  const Index n = g.size();
  const int m = p.degree();
  BigMatrix r = BigMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) r(i, i) = p.coefficients[static_cast<std::size_t>(m)];
  for (int j = m - 1; j >= 0; --j) {
    r = times_adjacency(r, g);
    for (Index i = 0; i < n; ++i) r(i, i) += p.coefficients[static_cast<std::size_t>(j)];
  }
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      if (r(i, j) != 0) return false;
  return true;
}

IntegerPolynomial minimal_polynomial(const Graph& g) {
  if (auto p = krylov_polynomial(g); p && annihilates(*p, g)) return *p;
  return matrix_polynomial(g);
}

std::vector<std::vector<BigInt>> power_reduction(const IntegerPolynomial& p,
                                                 int max_power) {
  const int m = p.degree();
  std::vector<std::vector<BigInt>> rows;
  if (max_power < m) return rows;
  // x^m = -sum_j a_j x^j
  std::vector<BigInt> row(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j)
    row[static_cast<std::size_t>(j)] = -p.coefficients[static_cast<std::size_t>(j)];
  rows.push_back(row);
  const std::vector<BigInt> base = row;
  for (int k = m + 1; k <= max_power; ++k) {
    const auto& prev = rows.back();
    std::vector<BigInt> next(static_cast<std::size_t>(m));
    const BigInt& top = prev[static_cast<std::size_t>(m - 1)];
    for (int j = 0; j < m; ++j) {
      BigInt value = top * base[static_cast<std::size_t>(j)];
      if (j > 0) value += prev[static_cast<std::size_t>(j - 1)];
      next[static_cast<std::size_t>(j)] = std::move(value);
    }
    rows.push_back(std::move(next));
  }
  return rows;
}

} // namespace walkent
