#include "walkent/kks.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>
#include <string>

namespace walkent {

namespace {

void require_shape(int c, int m) {
  if (c < 2) throw std::invalid_argument("kks closed forms need c >= 2");
  if (m < 1) throw std::invalid_argument("kks closed forms need m >= 1");
}

// Diagonal weight (V_t V_t^T)_jj of each eigenvalue label on the two
// walk-classes; index t = label - 1.
struct LabelWeights {
  std::array<double, 6> clique;
  std::array<double, 6> independent;
};

LabelWeights label_weights(const KksSpectrum& s) {
  const double c = s.c;
  const double m = s.m;
  const auto& l = s.lambda;
  const double q1 = l[4] * l[4];  // lambda_5^2 pairs with lambda_1
  const double q5 = l[0] * l[0];
  const double q3 = (l[2] + 1.0) * (l[2] + 1.0);
  const double q6 = (l[5] + 1.0) * (l[5] + 1.0);
  LabelWeights w{};
  w.clique = {1.0 / (c * (q1 + m)),
              (1.0 / c) * (1.0 - 1.0 / m),
              (1.0 - 1.0 / c) / (q3 + m),
              (1.0 - 1.0 / c) * (1.0 - 1.0 / m),
              1.0 / (c * (q5 + m)),
              (1.0 - 1.0 / c) / (q6 + m)};
  w.independent = {q1 / (c * (q1 + m)),
                   0.0,
                   (1.0 - 1.0 / c) * q3 / (q3 + m),
                   0.0,
                   q5 / (c * (q5 + m)),
                   (1.0 - 1.0 / c) * q6 / (q6 + m)};
  return w;
}

// e^x - 1 - x
double exp_minus_linear(double x) {
  if (std::abs(x) >= 0.5) return std::expm1(x) - x;
  double term = 0.5 * x * x;
  double sum = 0.0;
  for (int k = 2; k < 60 && term != 0.0; ++k) {
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    term *= x / (k + 1);
  }
  return sum;
}

} // namespace

bool KksSpectrum::strictly_ordered() const {
  for (std::size_t t = 0; t + 1 < lambda.size(); ++t)
    if (!(lambda[t] > lambda[t + 1])) return false;
  return true;
}

Matrix<double> householder_basis(int c) {
  if (c < 1) throw std::invalid_argument("householder_basis needs c >= 1");
  Matrix<double> n = Matrix<double>::Zero(c, c - 1);
  if (c == 1) return n;
  const double root = std::sqrt(static_cast<double>(c));
  const double scale = 1.0 / (c - root);
  for (int j = 1; j < c; ++j) {
    auto col = n.col(j - 1);
    col.setConstant(-scale);
    col(0) += root * scale;
    col(j) += 1.0;
  }
  return n;
}

KksSpectrum kks_spectrum(int c, int m) {
  require_shape(c, m);
  KksSpectrum s;
  s.c = c;
  s.m = m;
  const double cd = c - 1.0;
  const double outer = std::sqrt(cd * cd + 4.0 * m);
  s.gamma = std::sqrt(4.0 * m + 1.0);
  s.lambda = {(cd + outer) / 2.0, cd,    (-1.0 + s.gamma) / 2.0,
              -1.0,               (cd - outer) / 2.0, (-1.0 - s.gamma) / 2.0};
  const Index ci = c;
  const Index mi = m;
  s.multiplicity = {1, mi - 1, ci - 1, (mi - 1) * (ci - 1), 1, ci - 1};
  s.householder = householder_basis(c);
  return s;
}

KksEigenbasis kks_eigenbasis(int c, int m) {
  const KksSpectrum s = kks_spectrum(c, m);
  const Index n = static_cast<Index>(c) * (m + 1);
  const Index top = c;
  const Index bottom = n - top;
  const Matrix<double> nc = s.householder;
  const Matrix<double> nm = householder_basis(m);
  const Vector<double> ec = Vector<double>::Ones(c);
  const Vector<double> em = Vector<double>::Ones(m);

  KksEigenbasis out;
  out.vectors = Matrix<double>::Zero(n, n);
  out.values.resize(n);
  Index col = 0;
  auto push = [&](int label, const Vector<double>& v) {
    out.vectors.col(col) = v;
    out.values(col) = s.lambda[static_cast<std::size_t>(label - 1)];
    out.labels.push_back(label);
    ++col;
  };

  const double l2 = s.lambda[1];
  auto outer_pair = [&](int label) {
    const double lam = s.lambda[static_cast<std::size_t>(label - 1)];
    const double d = lam - l2;
    Vector<double> v(n);
    v.head(top) = ec;
    v.tail(bottom) = Eigen::kroneckerProduct(em, ec) / d;
    push(label, v * std::sqrt(d * d / (c * (d * d + m))));
  };
  auto inner_pair = [&](int label) {
    const double lam = s.lambda[static_cast<std::size_t>(label - 1)];
    const double d = lam + 1.0;
    const double norm = std::sqrt(d * d / (d * d + m));
    for (Index j = 0; j < nc.cols(); ++j) {
      Vector<double> v(n);
      v.head(top) = nc.col(j);
      v.tail(bottom) = Eigen::kroneckerProduct(em, nc.col(j)) / d;
      push(label, v * norm);
    }
  };

  outer_pair(1);
  {
    const Matrix<double> block = Eigen::kroneckerProduct(nm, ec);
    for (Index j = 0; j < block.cols(); ++j) {
      Vector<double> v = Vector<double>::Zero(n);
      v.tail(bottom) = block.col(j) / std::sqrt(static_cast<double>(c));
      push(2, v);
    }
  }
  inner_pair(3);
  {
    const Matrix<double> block = Eigen::kroneckerProduct(nm, nc);
    for (Index j = 0; j < block.cols(); ++j) {
      Vector<double> v = Vector<double>::Zero(n);
      v.tail(bottom) = block.col(j);
      push(4, v);
    }
  }
  outer_pair(5);
  inner_pair(6);

  if (col != n)
    throw std::logic_error("kks_eigenbasis assembled " + std::to_string(col) +
                           " vectors for " + std::to_string(n) + " nodes");
  const Matrix<double> a = kks_graph(c, m).adjacency_as<double>();
  const auto& v = out.vectors;
  out.eigen_residual = (a * v - v * out.values.asDiagonal()).cwiseAbs().maxCoeff();
  out.orthogonality_residual =
      (v.transpose() * v - Matrix<double>::Identity(n, n)).cwiseAbs().maxCoeff();
  out.ok = out.eigen_residual < 1e-10 && out.orthogonality_residual < 1e-10;
  return out;
}

KksScores kks_scores(double beta, int c, int m) {
  const KksSpectrum s = kks_spectrum(c, m);
  const double cd = c;
  const double md = m;
  const auto& l = s.lambda;
  const double e1 = std::exp(beta * l[0]);
  const double e2 = std::exp(beta * l[1]);
  const double e3 = std::exp(beta * l[2]);
  const double e4 = std::exp(beta * l[3]);
  const double e5 = std::exp(beta * l[4]);
  const double e6 = std::exp(beta * l[5]);
  const double q1 = l[4] * l[4];
  const double q5 = l[0] * l[0];
  const double q3 = (l[2] + 1.0) * (l[2] + 1.0);
  const double q6 = (l[5] + 1.0) * (l[5] + 1.0);
  KksScores out{};
  out.clique = e1 / (cd * (q1 + md)) + e5 / (cd * (q5 + md)) +
               (1.0 - 1.0 / cd) * (e3 / (q3 + md) + e6 / (q6 + md)) +
               e2 * (1.0 / cd) * (1.0 - 1.0 / md) +
               e4 * (1.0 - 1.0 / cd) * (1.0 - 1.0 / md);
  out.independent = e1 * q1 / (cd * (q1 + md)) + e5 * q5 / (cd * (q5 + md)) +
                    (1.0 - 1.0 / cd) * (e3 * q3 / (q3 + md) + e6 * q6 / (q6 + md));
  return out;
}

KksPieces kks_pieces(double beta, int c, int m) {
  const KksSpectrum s = kks_spectrum(c, m);
  const double cd = c;
  const double md = m;
  const double e = std::exp(1.0);
  const auto& l = s.lambda;
  const double e1 = std::exp(beta * l[0]);
  const double e2 = std::exp(beta * l[1]);
  const double e3 = std::exp(beta * l[2]);
  const double e4 = std::exp(beta * l[3]);
  const double e5 = std::exp(beta * l[4]);
  const double e6 = std::exp(beta * l[5]);
  const double q1 = l[4] * l[4];
  const double q5 = l[0] * l[0];
  const double q3 = (l[2] + 1.0) * (l[2] + 1.0);
  const double q6 = (l[5] + 1.0) * (l[5] + 1.0);
  KksPieces p{};
  p.h1 = (1.0 / cd) * (e1 / (q1 + md) + e5 / (q5 + md)) +
         (e2 - e4 - (e - 2.0)) * (1.0 / cd) * (1.0 - 1.0 / md);
  p.h2 = (e4 + (e - 2.0) / cd) * (1.0 - 1.0 / md);
  p.g1 = (1.0 / cd) * (e1 * q1 / (q1 + md) + e5 * q5 / (q5 + md));
  p.g2 = (1.0 - 1.0 / cd) * (e3 * (q3 - 1.0) / (q3 + md) + e6 * (q6 - 1.0) / (q6 + md));
  p.shared = (1.0 - 1.0 / cd) * (e3 / (q3 + md) + e6 / (q6 + md));
  return p;
}

double kks_score_difference(double beta, int c, int m) {
  const KksSpectrum s = kks_spectrum(c, m);
  const LabelWeights w = label_weights(s);
  double sum = 0.0;
  for (std::size_t t = 0; t < 6; ++t)
    sum += exp_minus_linear(beta * s.lambda[t]) * (w.clique[t] - w.independent[t]);
  return sum;
}

double GammaIdentities::max_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i)
    worst = std::max(worst, std::abs(lhs[i] - rhs[i]) / std::max(1.0, std::abs(rhs[i])));
  return worst;
}

GammaIdentities gamma_identities(int c, int m) {
  const KksSpectrum s = kks_spectrum(c, m);
  const double md = m;
  const double g = s.gamma;
  const double q3 = (s.lambda[2] + 1.0) * (s.lambda[2] + 1.0);
  const double q6 = (s.lambda[5] + 1.0) * (s.lambda[5] + 1.0);
  GammaIdentities out{};
  out.lhs = {q3 / (q3 + md), q6 / (q6 + md), 1.0 / (q3 + md), 1.0 / (q6 + md)};
  out.rhs = {0.5 * (1.0 + 1.0 / g), 0.5 * (1.0 - 1.0 / g), 0.5 / md * (1.0 - 1.0 / g),
             0.5 / md * (1.0 + 1.0 / g)};
  return out;
}

KksBetaResult find_entropic_beta_kks(int c) {
  if (c < 3) throw PreconditionError("find_entropic_beta_kks needs c >= 3");
  const int m = c + 1;
  KksBetaResult out;
  out.c = c;
  out.m = m;
  double lo = kks_bracket_floor;
  double hi = 1.0 / (c - 2);
  out.delta_at_lo = kks_score_difference(lo, c, m);
  out.delta_at_hi = kks_score_difference(hi, c, m);
  out.value.lo = lo;
  out.value.hi = hi;
  out.value.function = "exp";
  if (!((out.delta_at_lo < 0.0 && out.delta_at_hi > 0.0) ||
        (out.delta_at_lo > 0.0 && out.delta_at_hi < 0.0))) {
    out.status = KksBetaStatus::no_sign_change;
    return out;
  }
  double dlo = out.delta_at_lo;
  double mid = 0.5 * (lo + hi);
  double dmid = kks_score_difference(mid, c, m);
  for (int it = 0; it < 200 && std::abs(dmid) >= 1e-14; ++it) {
    if ((dlo < 0.0) == (dmid < 0.0)) {
      lo = mid;
      dlo = dmid;
    } else {
      hi = mid;
    }
    const double next = 0.5 * (lo + hi);
    if (next == lo || next == hi) break;
    mid = next;
    dmid = kks_score_difference(mid, c, m);
  }
  const KksScores sc = kks_scores(mid, c, m);
  const double mean = (sc.independent + m * sc.clique) / (m + 1.0);
  out.value.beta = mid;
  out.value.gap = std::abs(dmid) / mean;
  return out;
}

int kks_entropic_threshold(int c_max) {
  for (int c = 3; c <= c_max; ++c)
    if (kks_score_difference(1.0 / (c - 2), c, c + 1) > 0.0) return c;
  throw std::runtime_error("no entropic threshold found for c <= " + std::to_string(c_max));
}

HyperbolicReport hyperbolic_check(double beta, int c, int m) {
  if (c < 3) throw PreconditionError("hyperbolic_check needs c >= 3");
  if (m != c + 1) throw PreconditionError("hyperbolic_check needs m = c + 1");
  const double expected = 1.0 / (c - 2);
  if (std::abs(beta - expected) > 1e-12 * expected)
    throw PreconditionError("hyperbolic_check needs beta = 1/(c-2)");
  const double cd = c;
  const double md = m;
  const double e = std::exp(1.0);
  HyperbolicReport r{};
  r.beta = beta;
  r.gamma = std::sqrt(4.0 * md + 1.0);
  r.xi = 0.5 * beta * r.gamma;
  r.cosh_lhs = (1.0 - beta / 2.0) + (2.0 / r.gamma) * (1.0 + beta / 2.0) * ((e - 2.0) / cd);
  r.cosh_rhs = std::cosh(r.xi) * (1.0 - 1.0 / md);
  r.sinh_lhs = (1.0 - 2.0 / r.gamma) * (1.0 + beta / 2.0) * ((e - 2.0) / cd);
  r.sinh_rhs = (1.0 / r.gamma) * std::sinh(r.xi) * (1.0 + 1.0 / md);
  return r;
}

} // namespace walkent
