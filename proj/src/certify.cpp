#include "walkent/certify.hpp"

#include "walkent/minimal_polynomial.hpp"
#include "walkent/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace walkent {

std::string to_string(Verdict verdict) {
  switch (verdict) {
  case Verdict::certified:
    return "certified";
  case Verdict::infeasible_not_entropic:
    return "infeasible-not-entropic";
  case Verdict::infeasible_subset:
    return "infeasible-subset";
  case Verdict::inconclusive:
    return "inconclusive";
  }
  return "";
}

Vector<double> CollisionCertificate::unscaled() const {
  return x.cwiseQuotient(scaling);
}

namespace {

double relative_spread(const std::vector<BigRational>& values) {
  if (values.empty()) return 0.0;
  BigRational lo = values.front();
  BigRational hi = values.front();
  BigRational sum = 0;
  for (const auto& v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
  }
  const BigRational mean = sum / static_cast<long>(values.size());
  if (mean == 0) return hi == lo ? 0.0 : std::numeric_limits<double>::infinity();
  return static_cast<BigRational>((hi - lo) / mean).convert_to<double>();
}

} // namespace

CollisionCertificate certify_collision(const Graph& g, const std::vector<int>& classes,
                                       const CertifyOptions& options) {
  if (!is_connected(g)) throw std::invalid_argument("certify_collision: graph is not connected");
  const auto partition = walk_classes(g);
  std::set<int> chosen;
  if (classes.empty()) {
    for (std::size_t c = 0; c < partition.count(); ++c) chosen.insert(static_cast<int>(c));
  } else {
    for (int c : classes) {
      if (c < 0 || static_cast<std::size_t>(c) >= partition.count())
        throw std::invalid_argument("certify_collision: no walk-class " + std::to_string(c) +
                                    " (graph has " + std::to_string(partition.count()) + ")");
      chosen.insert(c);
    }
  }

  const WalkMatrix w = walk_matrix(g, options.mode, options.allow_large);
  CollisionCertificate cert;
  cert.mode = options.mode;
  cert.lengths = w.lengths;
  cert.classes.assign(chosen.begin(), chosen.end());
  cert.all_classes = chosen.size() == partition.count();
  for (int c : cert.classes)
    cert.rows.push_back(partition.representative(static_cast<std::size_t>(c)));

  const Index r = static_cast<Index>(cert.rows.size());
  BigMatrix wj(r, w.cols());
  for (Index i = 0; i < r; ++i) wj.row(i) = w.columns.row(cert.rows[static_cast<std::size_t>(i)]);
  const PositiveSystemSolution solution = solve_positive_system(wj, options);
  cert.feasible = solution.feasible;
  cert.x = solution.x;
  cert.scaling = solution.scaling;
  cert.margin = solution.margin;
  cert.residual = solution.residual;
  cert.exact_spread = solution.exact_spread;
  cert.verdict = classify(solution, cert.all_classes, options);
  return cert;
}

PositiveSystemSolution solve_positive_system(const BigMatrix& wj, const CertifyOptions& options) {
  const Index r = wj.rows();
  const Index n = wj.cols();
  PositiveSystemSolution out;
  out.scaling = Vector<double>::Ones(n);
  Matrix<double> scaled(r, n);
  for (Index j = 0; j < n; ++j) {
    BigInt top = 0;
    for (Index i = 0; i < r; ++i) {
      if (wj(i, j) < 0) throw std::invalid_argument("solve_positive_system: negative entry");
      top = std::max(top, BigInt(wj(i, j)));
    }
    if (top == 0) top = 1;
    out.scaling(j) = top.convert_to<double>();
    for (Index i = 0; i < r; ++i)
      scaled(i, j) = static_cast<BigRational>(BigRational(wj(i, j)) / BigRational(top))
                         .convert_to<double>();
  }

  // Variables: x (n), t, surplus s (n), slack u (n).
  //   W x = e;  x_j - t - s_j = 0;  x_j + u_j = U.
  const Index vars = 3 * n + 1;
  const Index rows = r + 2 * n;
  Matrix<double> a = Matrix<double>::Zero(rows, vars);
  Vector<double> b = Vector<double>::Zero(rows);
  a.topLeftCorner(r, n) = scaled;
  b.head(r).setOnes();
  for (Index j = 0; j < n; ++j) {
    a(r + j, j) = 1.0;
    a(r + j, n) = -1.0;
    a(r + j, n + 1 + j) = -1.0;
    a(r + n + j, j) = 1.0;
    a(r + n + j, 2 * n + 1 + j) = 1.0;
    b(r + n + j) = options.upper;
  }
  Vector<double> objective = Vector<double>::Zero(vars);
  objective(n) = 1.0;

  const LpResult lp = simplex_maximize(a, b, objective, options.tol_feas);
  if (lp.status != LpStatus::optimal) return out;
  out.feasible = true;
  out.x = lp.x.head(n);
  out.margin = n > 0 ? out.x.minCoeff() : 0.0;
  out.residual = r > 0 ? (scaled * out.x - Vector<double>::Ones(r)).cwiseAbs().maxCoeff() : 0.0;

  std::vector<BigRational> values;
  for (Index i = 0; i < r; ++i) {
    BigRational acc = 0;
    for (Index j = 0; j < n; ++j)
      acc += BigRational(out.x(j)) / BigRational(out.scaling(j)) * BigRational(wj(i, j));
    values.push_back(acc);
  }
  out.exact_spread = relative_spread(values);
  return out;
}

Verdict classify(const PositiveSystemSolution& solution, bool all_classes,
                 const CertifyOptions& options) {
  if (!solution.feasible)
    return all_classes ? Verdict::infeasible_not_entropic : Verdict::infeasible_subset;
  const bool positive = solution.margin > options.tol_pos;
  const bool accurate = solution.residual < options.tol_feas * 1e3 && solution.exact_spread < 1e-8;
  return positive && accurate ? Verdict::certified : Verdict::inconclusive;
}

PpscConstruction construct_ppsc_coefficients(const Graph& g,
                                             const CollisionCertificate& certificate,
                                             int truncation) {
  if (!certificate.feasible || !(certificate.margin > 0.0))
    throw std::invalid_argument("construct_ppsc_coefficients: certificate has no positive solution");
  const IntegerPolynomial p = minimal_polynomial(g);
  const int m = p.degree();
  const Vector<double> x = certificate.unscaled();

  int highest = m - 1;
  for (int l : certificate.lengths) highest = std::max(highest, l);
  if (truncation < m || truncation < highest)
    throw std::invalid_argument("construct_ppsc_coefficients: K = " + std::to_string(truncation) +
                                " is below the degree " + std::to_string(m) +
                                " or the highest length " + std::to_string(highest));

  // Target coefficients y_l on A^l for l <= highest.
  std::vector<double> y(static_cast<std::size_t>(highest + 1), 0.0);
  std::vector<bool> given(y.size(), false);
  double mean = 0.0;
  for (std::size_t j = 0; j < certificate.lengths.size(); ++j) {
    const auto l = static_cast<std::size_t>(certificate.lengths[j]);
    y[l] = x(static_cast<Index>(j));
    given[l] = true;
    mean += y[l];
  }
  mean /= std::max<std::size_t>(1, certificate.lengths.size());
  for (std::size_t l = 0; l < y.size(); ++l)
    if (!given[l]) {
      if (l > 1)
        throw std::invalid_argument("construct_ppsc_coefficients: certificate skips length " +
                                    std::to_string(l));
      y[l] = mean;
    }

  const auto reduction = power_reduction(p, truncation);
  auto row = [&](int k) -> const std::vector<BigInt>& {
    return reduction[static_cast<std::size_t>(k - m)];
  };
  std::vector<double> tail(static_cast<std::size_t>(truncation + 1), 0.0);
  for (int k = highest + 1; k <= truncation; ++k) {
    BigInt largest = 0;
    for (const auto& v : row(k)) largest = std::max(largest, BigInt(abs(v)));
    const double base = std::ldexp(1.0, -k);
    tail[static_cast<std::size_t>(k)] = largest == 0 ? base : base / largest.convert_to<double>();
  }

  PpscConstruction out;
  out.degree = m;
  out.truncation = truncation;
  out.coefficients.assign(static_cast<std::size_t>(truncation + 1), 0.0);
  for (;;) {
    const double factor = std::ldexp(1.0, -out.halvings);
    bool positive = true;
    for (int j = 0; j <= highest; ++j) {
      double c = y[static_cast<std::size_t>(j)];
      if (j < m)
        for (int k = highest + 1; k <= truncation; ++k)
          c -= row(k)[static_cast<std::size_t>(j)].convert_to<double>() * factor *
               tail[static_cast<std::size_t>(k)];
      out.coefficients[static_cast<std::size_t>(j)] = c;
      positive = positive && c > 0.0;
    }
    for (int k = highest + 1; k <= truncation; ++k)
      out.coefficients[static_cast<std::size_t>(k)] = factor * tail[static_cast<std::size_t>(k)];
    if (positive) break;
    if (++out.halvings > 200)
      throw std::runtime_error("construct_ppsc_coefficients: 200 halvings left a non-positive "
                               "head coefficient");
  }

  const auto counts = closed_walk_counts(g, truncation);
  double head_walks = 0.0;
  for (Index i = 0; i < g.size(); ++i) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += counts[static_cast<std::size_t>(j)](i).convert_to<double>();
    head_walks = std::max(head_walks, s);
  }
  out.tail_bound = std::ldexp(head_walks, -truncation - out.halvings);

  std::vector<double> diag;
  for (Index node : certificate.rows) {
    long double acc = 0.0L;
    for (int k = 0; k <= truncation; ++k)
      acc += static_cast<long double>(out.coefficients[static_cast<std::size_t>(k)]) *
             counts[static_cast<std::size_t>(k)](node).convert_to<long double>();
    diag.push_back(static_cast<double>(acc));
  }
  const auto [lo, hi] = std::minmax_element(diag.begin(), diag.end());
  double avg = 0.0;
  for (double d : diag) avg += d;
  avg /= static_cast<double>(std::max<std::size_t>(1, diag.size()));
  out.spread = diag.empty() ? 0.0 : (*hi - *lo) / avg;
  out.allowed_spread = certificate.exact_spread + out.tail_bound / avg + 1e-12;
  out.constant = out.spread <= out.allowed_spread;
  return out;
}

} // namespace walkent
