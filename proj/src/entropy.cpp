#include "walkent/entropy.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>

namespace walkent {

double walk_entropy(const Vector<double>& scores) {
  if (scores.size() == 0 || !scores.allFinite() || (scores.array() < 0.0).any())
    throw std::invalid_argument("walk_entropy: scores must be finite and nonnegative");
  const double total = scores.sum();
  if (!(total > 0.0)) throw std::invalid_argument("walk_entropy: scores sum to zero");
  double h = 0.0;
  for (Index i = 0; i < scores.size(); ++i) {
    const double p = scores(i) / total;
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double walk_entropy(const Graph& g, const PpscFunction& f, double beta) {
  return walk_entropy(f_diag(g, f, beta));
}

namespace {

struct Bisection {
  double beta;
  double residual;
};

template <typename Fn>
Bisection bisect(Fn&& delta, double lo, double hi, double scale) {
  double dlo = delta(lo);
  double mid = 0.5 * (lo + hi);
  double dmid = delta(mid);
  for (int it = 0; it < 200; ++it) {
    if (std::abs(dmid) < 1e-13 * scale) break;
    if ((dlo < 0.0) == (dmid < 0.0)) {
      lo = mid;
      dlo = dmid;
    } else {
      hi = mid;
    }
    const double next = 0.5 * (lo + hi);
    if (next == lo || next == hi) break;
    mid = next;
    dmid = delta(mid);
  }
  return {mid, dmid};
}

bool crosses(double before, double after) {
  return (before < 0.0 && after >= 0.0) || (before > 0.0 && after <= 0.0);
}

} // namespace

ScanResult scan_entropic_values(const Graph& g, const PpscFunction& f,
                                const ScanOptions& options) {
  if (!(options.beta_max > 0.0) || !(options.grid_step > 0.0) ||
      !(options.tol > 0.0))
    throw std::invalid_argument("scan: beta_max, grid_step and tol must be positive");
  ScanResult result;
  if (!is_connected(g)) {
    result.status = ScanStatus::disconnected;
    return result;
  }
  const auto partition = walk_classes(g);
  result.class_count = partition.count();
  if (partition.count() == 1) {
    result.status = ScanStatus::walk_regular;
    return result;
  }

  const auto spectrum = eigendecompose(g);
  const double radius = spectrum.values.cwiseAbs().maxCoeff();
  const std::size_t pairs = partition.count() - 1;
  const Index base = partition.representative(0);

  auto differences = [&](double beta) {
    const Vector<double> s = f_diag(spectrum, f, beta);
    std::vector<double> d(pairs);
    for (std::size_t c = 0; c < pairs; ++c)
      d[c] = s(partition.representative(c + 1)) - s(base);
    return d;
  };
  auto in_domain = [&](double beta) {
    try {
      f.check_domain(beta, radius);
      return true;
    } catch (const std::domain_error&) {
      return false;
    }
  };

  const auto steps = static_cast<long>(std::floor(options.beta_max / options.grid_step + 1e-9));
  std::vector<double> prev;
  for (long i = 1; i <= steps; ++i) {
    const double beta = static_cast<double>(i) * options.grid_step;
    if (!in_domain(beta)) break;
    std::vector<double> cur = differences(beta);
    if (!prev.empty()) {
      bool all = true;
      for (std::size_t c = 0; c < pairs; ++c) all = all && crosses(prev[c], cur[c]);
      if (all) {
        const double lo = beta - options.grid_step;
        const double hi = beta;
        const double scale = f_diag(spectrum, f, hi).mean();
        double lowest = hi;
        double highest = lo;
        double sum = 0.0;
        for (std::size_t c = 0; c < pairs; ++c) {
          auto delta = [&](double b) { return differences(b)[c]; };
          const auto root = bisect(delta, lo, hi, scale);
          lowest = std::min(lowest, root.beta);
          highest = std::max(highest, root.beta);
          sum += root.beta;
        }
        const double at = sum / static_cast<double>(pairs);
        EntropicValue value{at, lo, hi, constant_diagonal_gap(f_diag(spectrum, f, at)),
                            f.describe()};
        if (highest - lowest < 1e-9 && value.gap < options.tol)
          result.values.push_back(value);
        else
          result.candidates.push_back(value);
      }
    }
    prev = std::move(cur);
  }
  return result;
}

CartesianReport verify_cartesian_entropic(const Graph& g, const Graph& h,
                                          double beta0, double tol) {
  if (!(beta0 > 0.0)) throw PreconditionError("beta0 must be positive");
  if (!is_connected(g)) throw PreconditionError("G is not connected");
  if (!is_connected(h)) throw PreconditionError("H is not connected");
  const auto f = PpscFunction::exponential();
  const Vector<double> dg = f_diag(g, f, beta0);
  const Vector<double> dh = f_diag(h, f, beta0);
  if (const double gap = constant_diagonal_gap(dg); !(gap < tol))
    throw PreconditionError("exp(beta0 A_G) is not constant-diagonal (gap " +
                            std::to_string(gap) + ")");
  if (const double gap = constant_diagonal_gap(dh); !(gap < tol))
    throw PreconditionError("exp(beta0 A_H) is not constant-diagonal (gap " +
                            std::to_string(gap) + ")");
  if (is_walk_regular(g) && is_walk_regular(h))
    throw PreconditionError("G and H are both walk-regular");

  const Graph product = cartesian_product(g, h);
  CartesianReport report;
  report.product_connected = is_connected(product);
  report.product_non_walk_regular = !is_walk_regular(product);
  const Vector<double> dp = f_diag(product, f, beta0);
  report.product_gap = constant_diagonal_gap(dp);
  const Vector<double> kron = Eigen::kroneckerProduct(dg, dh);
  report.kronecker_error = (kron - dp).cwiseAbs().maxCoeff() / dp.cwiseAbs().maxCoeff();
  report.passed = report.product_connected && report.product_non_walk_regular &&
                  report.product_gap < tol && report.kronecker_error < 1e-9;
  return report;
}

namespace {

double exp_tail(double x, int truncation) {
  // sum_{k > K} x^k / k!
  double term = 1.0;
  for (int k = 1; k <= truncation + 1; ++k) term *= x / k;
  double sum = 0.0;
  for (int k = truncation + 1; k < truncation + 2000; ++k) {
    sum += term;
    if (term < 1e-300 || (k > x && term < sum * 1e-18)) break;
    term *= x / (k + 1);
  }
  return sum;
}

} // namespace

TensorFunction build_tensor_function(const Graph& g, double beta0, const Graph& h,
                                     int truncation, double tol) {
  if (!(beta0 > 0.0)) throw PreconditionError("beta0 must be positive");
  if (!is_connected(g)) throw PreconditionError("G is not connected");
  if (is_walk_regular(g)) throw PreconditionError("G is walk-regular");
  const auto spectrum = eigendecompose(g);
  if (const double gap =
          constant_diagonal_gap(f_diag(spectrum, PpscFunction::exponential(), beta0));
      !(gap < tol))
    throw PreconditionError("G is not entropic at beta0 under exp (gap " +
                            std::to_string(gap) + ")");
  if (!is_connected(h)) throw PreconditionError("H is not connected");
  if (!is_walk_regular(h)) throw PreconditionError("H is not walk-regular");
  if (!has_triangle(h)) throw PreconditionError("H contains no triangle");

  const double x = beta0 * spectrum.values(0);
  TensorFunction out{PpscFunction::exponential(), {}, truncation, 0.0};
  if (truncation <= 0) {
    out.truncation = 2;
    while (exp_tail(x, out.truncation) >= tensor_tail_target) ++out.truncation;
  } else if (exp_tail(x, truncation) >= tensor_tail_target) {
    throw PreconditionError("truncation K = " + std::to_string(truncation) +
                            " leaves exp tail " + std::to_string(exp_tail(x, truncation)) +
                            " >= 1e-14");
  }
  out.tail_bound = exp_tail(x, out.truncation);

  const auto counts = closed_walk_counts(h, out.truncation);
  std::vector<double> coeffs{1.0, beta0};
  double taylor = beta0;  // beta0^k / k!
  out.walk_constants = {counts[0](0), counts[1](0)};
  for (int k = 2; k <= out.truncation; ++k) {
    taylor *= beta0 / k;
    const BigInt& walks = counts[static_cast<std::size_t>(k)](0);
    out.walk_constants.push_back(walks);
    coeffs.push_back(taylor / walks.convert_to<double>());
  }
  out.function = PpscFunction::series(std::move(coeffs));
  return out;
}

TensorReport verify_tensor_entropic(const Graph& g, double beta0, const Graph& h,
                                    int truncation, double tol, Index direct_limit) {
  TensorReport report{build_tensor_function(g, beta0, h, truncation, tol), 0, 0.0,
                      std::nullopt, std::nullopt, 0.0, false, false, false};
  const auto& tf = report.function;
  const auto& c = tf.function.coefficients();
  const int big_k = tf.truncation;

  // sum_k c_k (A_G^k)_ii C_H(k), constant across the H coordinate.
  const auto g_counts = closed_walk_counts(g, big_k);
  Vector<double> per_g = Vector<double>::Zero(g.size());
  for (int k = 0; k <= big_k; ++k) {
    const double weight =
        c[static_cast<std::size_t>(k)] *
        tf.walk_constants[static_cast<std::size_t>(k)].convert_to<double>();
    if (weight == 0.0) continue;
    for (Index i = 0; i < g.size(); ++i)
      per_g(i) += weight * g_counts[static_cast<std::size_t>(k)](i).convert_to<double>();
  }
  const Vector<double> separable =
      Eigen::kroneckerProduct(per_g, Vector<double>::Ones(h.size()));
  report.separable_gap = constant_diagonal_gap(separable);
  report.allowed_gap = tol + tf.tail_bound / separable.mean();

  const Graph product = tensor_product(g, h);
  report.product_size = product.size();
  bool direct_ok = true;
  if (product.size() <= direct_limit) {
    const Matrix<double> a = product.adjacency_as<double>();
    Matrix<double> power = Matrix<double>::Identity(a.rows(), a.cols());
    Vector<double> diag = Vector<double>::Constant(a.rows(), c[0]);
    for (int k = 1; k <= big_k; ++k) {
      power = power * a;
      diag += c[static_cast<std::size_t>(k)] * power.diagonal();
    }
    report.direct_gap = constant_diagonal_gap(diag);
    report.separable_vs_direct =
        (diag - separable).cwiseAbs().maxCoeff() / diag.cwiseAbs().maxCoeff();
    direct_ok = *report.direct_gap < report.allowed_gap &&
                *report.separable_vs_direct < 1e-9;
  }
  report.product_connected = is_connected(product);
  report.product_non_walk_regular = !is_walk_regular(product);
  report.passed = report.separable_gap < report.allowed_gap && direct_ok &&
                  report.product_connected && report.product_non_walk_regular;
  return report;
}

} // namespace walkent
