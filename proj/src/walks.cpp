#include "walkent/walks.hpp"

#include "walkent/minimal_polynomial.hpp"

#include <algorithm>
#include <map>

namespace walkent {

namespace {

// P * A for symmetric 0/1 A: column i is the sum of P's columns over N(i).
BigMatrix times_adjacency(const BigMatrix& p, const Graph& g) {
  const Index n = g.size();
  BigMatrix out = BigMatrix::Zero(p.rows(), n);
  for (Index i = 0; i < n; ++i) {
    auto dst = out.col(i);
    for (Index j : g.neighbours()[static_cast<std::size_t>(i)]) {
      const auto src = p.col(j);
      for (Index r = 0; r < p.rows(); ++r) dst(r) += src(r);
    }
  }
  return out;
}

BigMatrix identity(Index n) {
  BigMatrix out = BigMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

} // namespace

ClosedWalkCounter::ClosedWalkCounter(const Graph& g)
    : graph_(&g), lower_(identity(g.size())), upper_(g.adjacency_as<BigInt>()) {}

void ClosedWalkCounter::advance_power() {
  BigMatrix next = times_adjacency(upper_, *graph_);
  lower_ = std::move(upper_);
  upper_ = std::move(next);
  ++lower_exponent_;
}

BigVector ClosedWalkCounter::next() {
  const int length = next_length_++;
  while (length / 2 > lower_exponent_) advance_power();
  const Index n = graph_->size();
  BigVector out(n);
  for (Index i = 0; i < n; ++i) {
    BigInt acc = 0;
    const auto a = lower_.col(i);
    if (length % 2 == 0) {
      for (Index j = 0; j < n; ++j)
        if (a(j) != 0) acc += a(j) * a(j);
    } else {
      const auto b = upper_.col(i);
      for (Index j = 0; j < n; ++j)
        if (a(j) != 0) acc += a(j) * b(j);
    }
    out(i) = std::move(acc);
  }
  return out;
}

std::vector<BigVector> closed_walk_counts(const Graph& g, int max_length) {
  ClosedWalkCounter counter(g);
  std::vector<BigVector> out;
  for (int l = 0; l <= max_length; ++l) out.push_back(counter.next());
  return out;
}

BigMatrix adjacency_power(const Graph& g, int power) {
  if (power < 0) throw std::invalid_argument("adjacency_power: negative power");
  BigMatrix p = identity(g.size());
  for (int k = 0; k < power; ++k) p = times_adjacency(p, g);
  return p;
}

int minimal_poly_degree(const Graph& g, DegreeMethod method) {
  if (method == DegreeMethod::exact) return minimal_polynomial(g).degree();
  const auto spectrum = eigendecompose(g);
  return static_cast<int>(cluster_eigenvalues(spectrum.values).size());
}

std::string to_string(WalkMode mode) {
  switch (mode) {
  case WalkMode::reduced:
    return "reduced";
  case WalkMode::full:
    return "full";
  case WalkMode::lp:
    return "lp";
  }
  return "";
}

WalkMode walk_mode_from_string(const std::string& text) {
  if (text == "reduced") return WalkMode::reduced;
  if (text == "full") return WalkMode::full;
  if (text == "lp") return WalkMode::lp;
  throw std::invalid_argument("unknown walk mode '" + text +
                              "' (expected reduced, full or lp)");
}

std::vector<int> walk_lengths(WalkMode mode, Index n, int degree) {
  std::vector<int> out;
  if (mode == WalkMode::lp) out.push_back(0);
  const int last = mode == WalkMode::full ? static_cast<int>(n) - 1 : degree - 1;
  for (int l = 2; l <= last; ++l) out.push_back(l);
  return out;
}

WalkMatrix walk_matrix(const Graph& g, WalkMode mode, bool allow_large) {
  if (mode == WalkMode::full && g.size() > full_mode_node_cap && !allow_large)
    throw CostGuardError("full walk matrix refused for n = " +
                         std::to_string(g.size()) + " > " +
                         std::to_string(full_mode_node_cap) +
                         " without override");
  WalkMatrix out{mode, minimal_poly_degree(g), {}, {}};
  out.lengths = walk_lengths(mode, g.size(), out.degree);
  out.columns.resize(g.size(), static_cast<Index>(out.lengths.size()));
  ClosedWalkCounter counter(g);
  std::size_t next = 0;
  const int last = out.lengths.empty() ? -1 : out.lengths.back();
  for (int l = 0; l <= last; ++l) {
    BigVector column = counter.next();
    if (next < out.lengths.size() && out.lengths[next] == l)
      out.columns.col(static_cast<Index>(next++)) = column;
  }
  return out;
}

std::vector<Index> WalkClassPartition::sizes() const {
  std::vector<Index> out;
  for (const auto& c : classes) out.push_back(static_cast<Index>(c.size()));
  return out;
}

WalkClassPartition partition_by_counts(const std::vector<BigVector>& counts) {
  WalkClassPartition out;
  out.degree = static_cast<int>(counts.size());
  const Index n = counts.empty() ? 0 : counts.front().size();
  out.class_of.assign(static_cast<std::size_t>(n), -1);
  std::map<std::vector<BigInt>, int> ids;
  for (Index i = 0; i < n; ++i) {
    std::vector<BigInt> row;
    row.reserve(counts.size());
    for (const auto& column : counts) row.push_back(column(i));
    auto [it, inserted] = ids.emplace(row, static_cast<int>(out.classes.size()));
    if (inserted) {
      out.classes.emplace_back();
      BigVector sig(static_cast<Index>(row.size()));
      for (std::size_t l = 0; l < row.size(); ++l) sig(static_cast<Index>(l)) = row[l];
      out.signature.push_back(std::move(sig));
    }
    out.class_of[static_cast<std::size_t>(i)] = it->second;
    out.classes[static_cast<std::size_t>(it->second)].push_back(i);
  }
  return out;
}

WalkClassPartition walk_classes(const Graph& g) {
  const int m = minimal_poly_degree(g);
  auto partition = partition_by_counts(closed_walk_counts(g, m - 1));
  partition.degree = m;
  return partition;
}

bool is_walk_regular(const Graph& g) {
  ClosedWalkCounter counter(g);
  auto constant = [](const BigVector& column) {
    for (Index i = 1; i < column.size(); ++i)
      if (column(i) != column(0)) return false;
    return true;
  };
  // Short lengths settle most non-walk-regular graphs before any
  // eigendecomposition is needed.
  const int cheap = static_cast<int>(std::min<Index>(g.size(), 8));
  for (int l = 0; l < cheap; ++l)
    if (!constant(counter.next())) return false;
  const int m = minimal_poly_degree(g);
  for (int l = cheap; l < m; ++l)
    if (!constant(counter.next())) return false;
  return true;
}

} // namespace walkent
