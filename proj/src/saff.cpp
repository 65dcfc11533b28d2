#include "walkent/saff.hpp"

#include "walkent/entropy.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace walkent {

RationalMatrix to_rational(const BigMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = BigRational(m(i, j));
  return out;
}

namespace {

struct Group {
  std::vector<Index> members;
  int copies;
};

class SaffSearch {
public:
  SaffSearch(const RationalMatrix& m, std::vector<Group> groups)
      : m_(m), groups_(std::move(groups)), s_count_(groups_.size(), 0),
        t_count_(groups_.size(), 0) {}

  bool run() {
    RationalVector zero = RationalVector::Constant(m_.cols(), BigRational(0));
    return visit(0, zero, zero, 0, 0);
  }

  std::vector<int> s_counts() const { return s_count_; }
  std::vector<int> t_counts() const { return t_count_; }

private:
  bool visit(std::size_t g, const RationalVector& sum_s, const RationalVector& sum_t,
             long size_s, long size_t_) {
    if (g == groups_.size()) return size_s > 0 && size_t_ > 0 && larger(sum_s, sum_t, size_s, size_t_);
    const RationalVector row = m_.row(groups_[g].members.front()).transpose();
    for (int s = 0; s <= groups_[g].copies; ++s)
      for (int t = 0; s + t <= groups_[g].copies; ++t) {
        s_count_[g] = s;
        t_count_[g] = t;
        const RationalVector next_s = sum_s + row * BigRational(s);
        const RationalVector next_t = sum_t + row * BigRational(t);
        if (visit(g + 1, next_s, next_t, size_s + s, size_t_ + t)) return true;
      }
    s_count_[g] = 0;
    t_count_[g] = 0;
    return false;
  }

  // avg(S, j) > avg(T, j) for every column j.
  static bool larger(const RationalVector& sum_s, const RationalVector& sum_t, long size_s,
                     long size_t_) {
    for (Index j = 0; j < sum_s.size(); ++j)
      if (!(sum_s(j) * size_t_ > sum_t(j) * size_s)) return false;
    return true;
  }

  const RationalMatrix& m_;
  std::vector<Group> groups_;
  std::vector<int> s_count_;
  std::vector<int> t_count_;
};

} // namespace

SaffResult saff_check(const RationalMatrix& m, Index size_cap, bool allow_large) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j) < 0) throw std::invalid_argument("saff_check: matrix has a negative entry");

  std::vector<Group> groups;
  for (Index i = 0; i < m.rows(); ++i) {
    auto same = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return m.row(g.members.front()) == m.row(i);
    });
    if (same == groups.end())
      groups.push_back({{i}, 1});
    else
      same->members.push_back(i);
  }
  for (auto& g : groups) g.copies = std::min<int>(saff_copy_cap, static_cast<int>(g.members.size()));

  SaffResult out;
  out.distinct_rows = static_cast<Index>(groups.size());
  if (out.distinct_rows > size_cap && !allow_large)
    throw CostGuardError("saff_check: " + std::to_string(out.distinct_rows) +
                         " distinct rows exceed the cap of " + std::to_string(size_cap));

  SaffSearch search(m, groups);
  if (!search.run()) return out;
  out.satisfied = false;
  const auto sc = search.s_counts();
  const auto tc = search.t_counts();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& members = groups[g].members;
    for (int k = 0; k < sc[g]; ++k) out.s.push_back(members[static_cast<std::size_t>(k)]);
    for (int k = 0; k < tc[g]; ++k) out.t.push_back(members[static_cast<std::size_t>(sc[g] + k)]);
  }
  return out;
}

SaffResult saff_check(const BigMatrix& m, Index size_cap, bool allow_large) {
  return saff_check(to_rational(m), size_cap, allow_large);
}

FarkasRefutation farkas_refutation(const RationalMatrix& m, const std::vector<Index>& s,
                                   const std::vector<Index>& t) {
  if (s.empty() || t.empty()) throw PreconditionError("farkas_refutation: S and T must be nonempty");
  std::set<Index> seen;
  for (Index i : s) {
    if (i < 0 || i >= m.rows()) throw PreconditionError("farkas_refutation: row out of range");
    if (!seen.insert(i).second) throw PreconditionError("farkas_refutation: repeated row in S");
  }
  for (Index i : t) {
    if (i < 0 || i >= m.rows()) throw PreconditionError("farkas_refutation: row out of range");
    if (!seen.insert(i).second)
      throw PreconditionError("farkas_refutation: S and T are not disjoint");
  }

  const auto size_s = static_cast<long>(s.size());
  const auto size_t_ = static_cast<long>(t.size());
  FarkasRefutation out;
  out.s = s;
  out.t = t;
  bool first = true;
  for (Index j = 0; j < m.cols(); ++j) {
    BigRational avg_s = 0;
    BigRational avg_t = 0;
    for (Index i : s) avg_s += m(i, j);
    for (Index i : t) avg_t += m(i, j);
    avg_s /= size_s;
    avg_t /= size_t_;
    if (avg_t == 0)
      throw PreconditionError("farkas_refutation: zero T-average in column " + std::to_string(j));
    if (!(avg_t < avg_s))
      throw PreconditionError("farkas_refutation: avg(T) >= avg(S) in column " +
                              std::to_string(j));
    const BigRational ratio = (avg_s - avg_t) / avg_t;
    if (first || ratio < out.delta) out.delta = ratio;
    first = false;
  }
  if (first) throw PreconditionError("farkas_refutation: matrix has no columns");

  out.y = RationalVector::Constant(m.rows(), BigRational(0));
  for (Index i : s) out.y(i) = BigRational(1) / size_s;
  for (Index i : t) out.y(i) = -(1 + out.delta) / size_t_;
  out.y_times_m = RationalVector::Constant(m.cols(), BigRational(0));
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (out.y(i) != 0) out.y_times_m(j) += out.y(i) * m(i, j);
  out.y_times_e = 0;
  for (Index i = 0; i < m.rows(); ++i) out.y_times_e += out.y(i);

  out.valid = out.delta > 0 && out.y_times_e == -out.delta;
  for (Index j = 0; j < m.cols(); ++j) out.valid = out.valid && out.y_times_m(j) >= 0;
  return out;
}

FarkasRefutation farkas_refutation(const BigMatrix& m, const std::vector<Index>& s,
                                   const std::vector<Index>& t) {
  return farkas_refutation(to_rational(m), s, t);
}

} // namespace walkent
