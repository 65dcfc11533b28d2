#include "walkent/kks.hpp"
#include "walkent/reproduce.hpp"

#include <doctest.h>

#include <cmath>

using namespace walkent;

TEST_CASE("kks spectrum invariants") {
  for (int c = 2; c <= 12; ++c)
    for (int m : {c + 1, 2 * c, c * c - c - 1}) {
      if (m <= c) continue;
      CAPTURE(c);
      CAPTURE(m);
      const auto s = kks_spectrum(c, m);
      Index total = 0;
      double trace = 0.0;
      double trace2 = 0.0;
      for (std::size_t t = 0; t < 6; ++t) {
        total += s.multiplicity[t];
        trace += s.multiplicity[t] * s.lambda[t];
        trace2 += s.multiplicity[t] * s.lambda[t] * s.lambda[t];
      }
      CHECK(total == c * (m + 1));
      CHECK(std::abs(trace) < 1e-9);
      const double edges = m * c * (c - 1) / 2.0 + c * m;
      CHECK(trace2 == doctest::Approx(2.0 * edges).epsilon(1e-12));
      CHECK(s.gamma == doctest::Approx(std::sqrt(4.0 * m + 1.0)));
      CHECK(s.strictly_ordered() == (m < c * c - c));
      const Matrix<double> q = s.householder;
      CHECK(q.cols() == c - 1);
      if (c > 1) {
        CHECK((q.transpose() * q - Matrix<double>::Identity(c - 1, c - 1)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((q.transpose() * Vector<double>::Ones(c)).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  CHECK(householder_basis(1).cols() == 0);
}

TEST_CASE("kks eigenbasis") {
  for (auto [c, m] : {std::pair{2, 3}, {3, 4}, {4, 5}, {4, 10}, {6, 9}}) {
    CAPTURE(c);
    CAPTURE(m);
    const auto b = kks_eigenbasis(c, m);
    CHECK(b.ok);
    CHECK(b.eigen_residual < 1e-10);
    CHECK(b.orthogonality_residual < 1e-10);
    CHECK(b.vectors.cols() == c * (m + 1));
  }
  const auto b = kks_eigenbasis(2, 3);
  std::array<int, 6> counts{};
  for (int label : b.labels) ++counts[static_cast<std::size_t>(label - 1)];
  CHECK(counts == std::array<int, 6>{1, 2, 1, 2, 1, 1});
  for (Index k = 0; k < b.vectors.cols(); ++k) {
    const int label = b.labels[static_cast<std::size_t>(k)];
    if (label == 2 || label == 4) CHECK(b.vectors.col(k).head(2).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("kks spectrum matches the jacobi solver") {
  const auto s = kks_spectrum(4, 10);
  const auto clusters = cluster_eigenvalues(eigendecompose(kks_graph(4, 10)).values);
  REQUIRE(clusters.size() == 6);
  for (std::size_t t = 0; t < 6; ++t) {
    CHECK(clusters[t].value == doctest::Approx(s.lambda[t]).epsilon(1e-10));
    CHECK(clusters[t].multiplicity == s.multiplicity[t]);
  }
}

TEST_CASE("closed-form scores agree with the spectral diagonal") {
  for (auto [c, m] : {std::pair{3, 4}, {4, 5}, {5, 7}}) {
    const Graph g = kks_graph(c, m);
    for (double beta : {0.1, 0.5, 1.0}) {
      const Vector<double> d = f_diag(g, PpscFunction::exponential(), beta);
      const auto s = kks_scores(beta, c, m);
      CHECK(s.independent == doctest::Approx(d(0)).epsilon(1e-12));
      CHECK(s.clique == doctest::Approx(d(c)).epsilon(1e-12));
      CHECK(kks_score_difference(beta, c, m) == doctest::Approx(s.clique - s.independent).epsilon(1e-8));
    }
  }
  const auto tiny = kks_scores(1e-12, 4, 5);
  CHECK(tiny.independent == doctest::Approx(1.0));
  CHECK(tiny.clique == doctest::Approx(1.0));
  CHECK(kks_score_difference(1e-3, 4, 5) < 0.0);
}

TEST_CASE("kks pieces") {
  for (int c = 3; c <= 60; ++c)
    for (double beta : {0.01, 1.0 / (c - 2.0), 0.3}) {
      const int m = c + 1;
      const auto p = kks_pieces(beta, c, m);
      const auto s = kks_scores(beta, c, m);
      CHECK(p.h1 + p.h2 + p.shared == doctest::Approx(s.clique).epsilon(1e-12));
      CHECK(p.g1 + p.g2 + p.shared == doctest::Approx(s.independent).epsilon(1e-12));
    }
  for (int c = 4; c <= 60; ++c) {
    const auto p = kks_pieces(1.0 / (c - 2.0), c, c + 1);
    CHECK(p.h1 > p.g1);
    CHECK((p.h2 > p.g2) == (c >= 22));
  }
  const auto p = kks_pieces(1.0 / 48.0, 50, 51);
  CHECK(p.h1 > p.g1);
  CHECK(p.h2 > p.g2);
}

TEST_CASE("gamma identities and bounds") {
  for (int c = 3; c <= 60; ++c) {
    CHECK(gamma_identities(c, c + 1).max_error() < 1e-10);
    const auto s = kks_spectrum(c, c + 1);
    CHECK(s.lambda[4] * s.lambda[4] < 2.0);
  }
}

TEST_CASE("entropic beta for kks(c, c+1)") {
  const auto r4 = find_entropic_beta_kks(4);
  REQUIRE(r4.status == KksBetaStatus::found);
  CHECK(r4.m == 5);
  CHECK(std::abs(r4.value.beta - kks45_golden_beta_low) < 1e-12);
  CHECK(r4.delta_at_lo < 0.0);
  CHECK(r4.delta_at_hi > 0.0);
  CHECK(std::abs(kks_score_difference(r4.value.beta, 4, 5)) < 1e-13);

  const std::array<double, 5> expected{0.22928, 0.13675, 0.09163, 0.06590, 0.04976};
  for (int c = 5; c <= 9; ++c) {
    const auto r = find_entropic_beta_kks(c);
    REQUIRE(r.status == KksBetaStatus::found);
    CHECK(r.value.beta == doctest::Approx(expected[static_cast<std::size_t>(c - 5)]).epsilon(1e-4));
    CHECK(r.value.beta < 1.0 / (c - 2.0));
  }
  CHECK(find_entropic_beta_kks(3).status == KksBetaStatus::no_sign_change);
  CHECK_THROWS_AS(find_entropic_beta_kks(2), PreconditionError);
  CHECK(kks_entropic_threshold(60) == 4);
}

TEST_CASE("hyperbolic inequalities at beta = 1/(c-2)") {
  const auto below = hyperbolic_check(1.0 / 35.0, 37, 38);
  CHECK(std::min(below.cosh_margin(), below.sinh_margin()) <= 0.0);
  for (int c : {38, 50, 100, 400}) {
    const auto h = hyperbolic_check(1.0 / (c - 2.0), c, c + 1);
    CHECK(h.cosh_margin() > 0.0);
    CHECK(h.sinh_margin() > 0.0);
  }
  const auto h = hyperbolic_check(1.0 / 98.0, 100, 101);
  CHECK(h.xi == doctest::Approx(std::sqrt(101.25) / 98.0).epsilon(1e-12));
  CHECK_THROWS(hyperbolic_check(0.3, 100, 101));
  CHECK_THROWS(hyperbolic_check(1.0 / 98.0, 100, 102));
}
