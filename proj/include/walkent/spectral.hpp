#pragma once

#include "walkent/graph.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace walkent {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Eigenvalues in descending order; column k of `vectors` pairs with
/// eigenvalue k and the columns are orthonormal.
template <typename Scalar>
struct Spectrum {
  Vector<Scalar> values;
  Matrix<Scalar> vectors;
};

class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

/// Cyclic-by-row Jacobi eigensolver for a dense symmetric matrix.
///
/// Sweeps until the off-diagonal Frobenius norm falls below
/// eps * ||A||_F, throwing ConvergenceError (with the remaining off-diagonal
/// norm) if `max_sweeps` is exhausted first.
template <typename Derived>
Spectrum<typename Derived::Scalar>
eigendecompose(const Eigen::MatrixBase<Derived>& input, int max_sweeps = 100) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::sqrt;
  const Index n = input.rows();
  if (n != input.cols())
    throw std::invalid_argument("eigendecompose: matrix must be square");

  Matrix<Scalar> a = input;
  if (n > 0 && (a - a.transpose()).cwiseAbs().maxCoeff() >
                   Scalar(1e-12) * std::max(Scalar(1), a.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("eigendecompose: matrix must be symmetric");
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);

  const Scalar eps = Eigen::NumTraits<Scalar>::epsilon();
  const Scalar scale = a.norm();
  auto off_norm = [&] {
    Scalar s(0);
    for (Index q = 1; q < n; ++q)
      for (Index p = 0; p < q; ++p) s += a(p, q) * a(p, q);
    return sqrt(Scalar(2) * s);
  };

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_norm() <= eps * scale) break;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        const Scalar t = (theta >= Scalar(0) ? Scalar(1) : Scalar(-1)) /
                         (abs(theta) + sqrt(Scalar(1) + theta * theta));
        const Scalar c = Scalar(1) / sqrt(Scalar(1) + t * t);
        const Scalar s = t * c;
        // A <- J^T A J with J the (p, q) rotation.
        for (Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        for (Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (sweep == max_sweeps && off_norm() > eps * scale) {
    const double residual = static_cast<double>(off_norm());
    throw ConvergenceError("eigendecompose: no convergence after " +
                               std::to_string(max_sweeps) +
                               " sweeps, off-diagonal norm " +
                               std::to_string(residual),
                           residual);
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return a(i, i) > a(j, j); });
  Spectrum<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.values(k) = a(order[static_cast<std::size_t>(k)],
                      order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

template <typename Scalar = double>
Spectrum<Scalar> eigendecompose(const Graph& g) {
  return eigendecompose(g.adjacency_as<Scalar>());
}

/// A distinct eigenvalue together with its multiplicity.
template <typename Scalar>
struct EigenCluster {
  Scalar value;
  Index multiplicity;
};

/// Default tolerance for treating two eigenvalues as equal:
/// 1e-8 * max(1, spectral radius).
template <typename Scalar>
Scalar cluster_tolerance(const Vector<Scalar>& values) {
  using std::max;
  const Scalar radius = values.size() ? values.cwiseAbs().maxCoeff() : Scalar(0);
  return Scalar(1e-8) * max(Scalar(1), radius);
}

/// Groups descending eigenvalues into clusters; a cluster's value is the
/// mean of its members.
template <typename Scalar>
std::vector<EigenCluster<Scalar>>
cluster_eigenvalues(const Vector<Scalar>& values, Scalar tol) {
  std::vector<EigenCluster<Scalar>> out;
  Scalar sum(0);
  for (Index k = 0; k < values.size(); ++k) {
    if (!out.empty() &&
        std::abs(values(k) - values(k - 1)) <= tol) {
      ++out.back().multiplicity;
      sum += values(k);
      out.back().value = sum / Scalar(out.back().multiplicity);
    } else {
      out.push_back({values(k), 1});
      sum = values(k);
    }
  }
  return out;
}

template <typename Scalar>
std::vector<EigenCluster<Scalar>> cluster_eigenvalues(const Vector<Scalar>& values) {
  return cluster_eigenvalues(values, cluster_tolerance(values));
}

/// Positive power-series coefficient function: the exponential, the
/// resolvent 1/(1 - alpha x), or a truncated series sum_k c_k x^k with every
/// c_k > 0.
class PpscFunction {
public:
  enum class Kind { exp, resolvent, series };

  static PpscFunction exponential() { return PpscFunction(Kind::exp, 0.0, {}); }
  static PpscFunction resolvent(double alpha) {
    if (!(alpha > 0.0))
      throw std::invalid_argument("resolvent needs alpha > 0");
    return PpscFunction(Kind::resolvent, alpha, {});
  }
  static PpscFunction series(std::vector<double> coefficients) {
    if (coefficients.empty())
      throw std::invalid_argument("series needs at least one coefficient");
    for (double c : coefficients)
      if (!(c > 0.0))
        throw std::invalid_argument("series coefficients must be positive");
    return PpscFunction(Kind::series, 0.0, std::move(coefficients));
  }

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  /// Throws std::domain_error if f(beta * x) is undefined for some x with
  /// |x| <= spectral_radius.
  void check_domain(double beta, double spectral_radius) const {
    if (kind_ == Kind::resolvent && !(alpha_ * beta * spectral_radius < 1.0))
      throw std::domain_error(
          "resolvent undefined: alpha * beta * spectral radius = " +
          std::to_string(alpha_ * beta * spectral_radius) + " >= 1");
  }

  template <typename Scalar>
  Scalar operator()(Scalar x) const {
    using std::exp;
    switch (kind_) {
    case Kind::exp:
      return exp(x);
    case Kind::resolvent:
      return Scalar(1) / (Scalar(1) - Scalar(alpha_) * x);
    case Kind::series: {
      Scalar acc(0);
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + Scalar(*it);
      return acc;
    }
    }
    return Scalar(0);
  }

  std::string describe() const {
    switch (kind_) {
    case Kind::exp:
      return "exp";
    case Kind::resolvent:
      return "resolvent(" + std::to_string(alpha_) + ")";
    case Kind::series:
      return "series(K=" + std::to_string(coeffs_.size() - 1) + ")";
    }
    return "";
  }

private:
  PpscFunction(Kind kind, double alpha, std::vector<double> coeffs)
      : kind_(kind), alpha_(alpha), coeffs_(std::move(coeffs)) {}

  Kind kind_;
  double alpha_;
  std::vector<double> coeffs_;
};

/// diag(f(beta A)) = sum_k f(beta lambda_k) V(:,k).^2
template <typename Scalar>
Vector<Scalar> f_diag(const Spectrum<Scalar>& spectrum, const PpscFunction& f,
                      Scalar beta) {
  const Scalar radius = spectrum.values.cwiseAbs().maxCoeff();
  f.check_domain(static_cast<double>(beta), static_cast<double>(radius));
  Vector<Scalar> weights(spectrum.values.size());
  for (Index k = 0; k < weights.size(); ++k)
    weights(k) = f(beta * spectrum.values(k));
  return spectrum.vectors.cwiseAbs2() * weights;
}

inline Vector<double> f_diag(const Graph& g, const PpscFunction& f, double beta) {
  return f_diag(eigendecompose(g), f, beta);
}

/// Trace of f(beta A) from the eigenvalues alone.
template <typename Scalar>
Scalar f_trace(const Spectrum<Scalar>& spectrum, const PpscFunction& f,
               Scalar beta) {
  Scalar acc(0);
  for (Index k = 0; k < spectrum.values.size(); ++k)
    acc += f(beta * spectrum.values(k));
  return acc;
}

/// (max v - min v) / mean v; zero iff v is constant.
template <typename Derived>
typename Derived::Scalar constant_diagonal_gap(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  if (v.size() == 0)
    throw std::invalid_argument("constant_diagonal_gap: empty vector");
  const Scalar mean = v.mean();
  return (v.maxCoeff() - v.minCoeff()) / mean;
}

/// max |V^T V - I| and max |A V - V diag(values)|.
template <typename Scalar>
struct SpectrumResiduals {
  Scalar orthogonality;
  Scalar eigen_equation;
};

template <typename Derived, typename Scalar = typename Derived::Scalar>
SpectrumResiduals<Scalar> residuals(const Eigen::MatrixBase<Derived>& a,
                                    const Spectrum<Scalar>& s) {
  const Index n = s.vectors.rows();
  const Matrix<Scalar> gram = s.vectors.transpose() * s.vectors;
  const Matrix<Scalar> eq = a * s.vectors - s.vectors * s.values.asDiagonal();
  return {(gram - Matrix<Scalar>::Identity(n, n)).cwiseAbs().maxCoeff(),
          eq.cwiseAbs().maxCoeff()};
}

} // namespace walkent
