#include "walkent/simplex.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace walkent {

namespace {

class Tableau {
public:
  Tableau(Matrix<double> t, std::vector<Index> basis, double tol)
      : t_(std::move(t)), basis_(std::move(basis)), tol_(tol) {}

  // Objective row is the last row; the rhs is the last column. Reduced costs
  // are stored as z_j - c_j, so a negative entry can improve a maximisation.
  bool optimise(Index columns) {
    const Index obj = t_.rows() - 1;
    const Index rhs = t_.cols() - 1;
    for (;;) {
      Index enter = -1;
      for (Index j = 0; j < columns; ++j)
        if (t_(obj, j) < -tol_) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      double best = std::numeric_limits<double>::infinity();
      for (Index i = 0; i < obj; ++i)
        if (t_(i, enter) > tol_) best = std::min(best, t_(i, rhs) / t_(i, enter));
      if (best == std::numeric_limits<double>::infinity()) return false;
      Index leave = -1;
      for (Index i = 0; i < obj; ++i) {
        if (t_(i, enter) <= tol_) continue;
        if (t_(i, rhs) / t_(i, enter) > best + tol_ * std::max(1.0, best)) continue;
        if (leave < 0 || basis_[static_cast<std::size_t>(i)] <
                             basis_[static_cast<std::size_t>(leave)])
          leave = i;
      }
      pivot(leave, enter);
    }
  }

  void pivot(Index row, Index col) {
    t_.row(row) /= t_(row, col);
    for (Index i = 0; i < t_.rows(); ++i) {
      if (i == row) continue;
      const double factor = t_(i, col);
      if (factor != 0.0) t_.row(i) -= factor * t_.row(row);
    }
    basis_[static_cast<std::size_t>(row)] = col;
    ++pivots_;
  }

  Matrix<double>& table() { return t_; }
  std::vector<Index>& basis() { return basis_; }
  int pivots() const { return pivots_; }

private:
  Matrix<double> t_;
  std::vector<Index> basis_;
  double tol_;
  int pivots_ = 0;
};

} // namespace

LpResult simplex_maximize(const Matrix<double>& a, const Vector<double>& b,
                          const Vector<double>& c, double tol) {
  const Index rows = a.rows();
  const Index vars = a.cols();
  if (b.size() != rows || c.size() != vars)
    throw std::invalid_argument("simplex_maximize: dimension mismatch");

  // Phase 1: one artificial per row, minimise their sum.
  Matrix<double> t = Matrix<double>::Zero(rows + 1, vars + rows + 1);
  std::vector<Index> basis(static_cast<std::size_t>(rows));
  for (Index i = 0; i < rows; ++i) {
    const double sign = b(i) < 0.0 ? -1.0 : 1.0;
    t.row(i).head(vars) = sign * a.row(i);
    t(i, vars + i) = 1.0;
    t(i, vars + rows) = sign * b(i);
    basis[static_cast<std::size_t>(i)] = vars + i;
  }
  for (Index i = 0; i < rows; ++i) {
    t.row(rows).head(vars) -= t.row(i).head(vars);
    t(rows, vars + rows) -= t(i, vars + rows);
  }

  Tableau tab(std::move(t), std::move(basis), tol);
  LpResult result;
  tab.optimise(vars + rows);
  auto& tt = tab.table();
  const Index rhs = vars + rows;
  result.phase_one_residual = -tt(rows, rhs);
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if (result.phase_one_residual > tol * scale) {
    result.status = LpStatus::infeasible;
    result.pivots = tab.pivots();
    return result;
  }

  // Drive remaining artificials out of the basis; rows where that is
  // impossible are redundant and are dropped.
  std::vector<Index> keep;
  for (Index i = 0; i < rows; ++i) {
    if (tab.basis()[static_cast<std::size_t>(i)] < vars) {
      keep.push_back(i);
      continue;
    }
    Index col = -1;
    for (Index j = 0; j < vars; ++j)
      if (std::abs(tt(i, j)) > tol) {
        col = j;
        break;
      }
    if (col >= 0) {
      tab.pivot(i, col);
      keep.push_back(i);
    }
  }

  // Phase 2 on the original columns.
  const Index kept = static_cast<Index>(keep.size());
  Matrix<double> t2 = Matrix<double>::Zero(kept + 1, vars + 1);
  std::vector<Index> basis2;
  for (Index r = 0; r < kept; ++r) {
    const Index i = keep[static_cast<std::size_t>(r)];
    t2.row(r).head(vars) = tt.row(i).head(vars);
    t2(r, vars) = tt(i, rhs);
    basis2.push_back(tab.basis()[static_cast<std::size_t>(i)]);
  }
  t2.row(kept).head(vars) = -c.transpose();
  for (Index r = 0; r < kept; ++r) {
    const double cb = c(basis2[static_cast<std::size_t>(r)]);
    if (cb != 0.0) t2.row(kept) += cb * t2.row(r);
  }
  Tableau tab2(std::move(t2), std::move(basis2), tol);
  const bool bounded = tab2.optimise(vars);
  result.pivots = tab.pivots() + tab2.pivots();
  if (!bounded) {
    result.status = LpStatus::unbounded;
    return result;
  }
  result.status = LpStatus::optimal;
  result.x = Vector<double>::Zero(vars);
  for (Index r = 0; r < kept; ++r)
    result.x(tab2.basis()[static_cast<std::size_t>(r)]) = std::max(0.0, tab2.table()(r, vars));
  result.objective = c.dot(result.x);
  return result;
}

} // namespace walkent
