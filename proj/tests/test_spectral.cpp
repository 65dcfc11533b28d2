#include "fixtures.hpp"
#include "walkent/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

using namespace walkent;

TEST_CASE("jacobi on complete graphs") {
  const auto k3 = eigendecompose(complete_graph(3));
  CHECK(k3.values(0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(k3.values(1) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(k3.values(2) == doctest::Approx(-1.0).epsilon(1e-14));
  const auto k2 = eigendecompose(complete_graph(2));
  CHECK(k2.values(0) == doctest::Approx(1.0));
  CHECK(k2.values(1) == doctest::Approx(-1.0));
}

TEST_CASE("jacobi agrees with eigen's solver and satisfies the spectrum invariants") {
  for (const auto& g : fixture_graphs(150)) {
    CAPTURE(g.provenance());
    const Matrix<double> a = g.adjacency_as<double>();
    const auto s = eigendecompose(a);
    Eigen::SelfAdjointEigenSolver<Matrix<double>> oracle(a);
    Vector<double> expected = oracle.eigenvalues().reverse();
    CHECK((s.values - expected).cwiseAbs().maxCoeff() < 1e-9);
    for (Index k = 1; k < s.values.size(); ++k) CHECK(s.values(k - 1) >= s.values(k));
    const auto r = residuals(a, s);
    CHECK(r.orthogonality < 1e-10);
    CHECK(r.eigen_equation < 1e-8);
    const Matrix<double> rebuilt = s.vectors * s.values.asDiagonal() * s.vectors.transpose();
    CHECK((rebuilt - a).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("jacobi is generic over the scalar") {
  const auto s = eigendecompose<long double>(kks_graph(4, 5));
  const long double top = (3.0L + std::sqrt(9.0L + 20.0L)) / 2.0L;
  CHECK(std::abs(static_cast<double>(s.values(0) - top)) < 1e-15);
}

TEST_CASE("jacobi input validation and sweep cap") {
  Matrix<double> bad(2, 2);
  bad << 0, 1, 2, 0;
  CHECK_THROWS_AS(eigendecompose(bad), std::invalid_argument);
  CHECK_THROWS_AS(eigendecompose(Matrix<double>(2, 3)), std::invalid_argument);
  const Matrix<double> a = kks_graph(4, 5).adjacency_as<double>();
  try {
    eigendecompose(a, 1);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.residual() > 0.0);
  }
}

TEST_CASE("eigenvalue clustering") {
  const auto clusters = cluster_eigenvalues(eigendecompose(kks_graph(4, 5)).values);
  REQUIRE(clusters.size() == 6);
  Index total = 0;
  for (const auto& c : clusters) total += c.multiplicity;
  CHECK(total == 24);
  CHECK(clusters[3].value == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(clusters[3].multiplicity == 12);
}

TEST_CASE("ppsc function kinds") {
  CHECK_THROWS_AS(PpscFunction::resolvent(0.0), std::invalid_argument);
  CHECK_THROWS_AS(PpscFunction::series({1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(PpscFunction::series({}), std::invalid_argument);
  const auto r = PpscFunction::resolvent(0.5);
  CHECK(r(1.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(r.check_domain(1.0, 2.0), std::domain_error);
  CHECK_NOTHROW(r.check_domain(1.0, 1.9));
  const auto s = PpscFunction::series({1.0, 2.0, 3.0});
  CHECK(s(2.0) == doctest::Approx(1.0 + 4.0 + 12.0));
  CHECK(s.describe() == "series(K=2)");
  CHECK(PpscFunction::exponential().describe() == "exp");
}

TEST_CASE("f_diag examples") {
  const auto f = PpscFunction::exponential();
  const Vector<double> k2 = f_diag(complete_graph(2), f, 0.7);
  CHECK(k2(0) == doctest::Approx(std::cosh(0.7)).epsilon(1e-14));
  CHECK(k2(1) == doctest::Approx(std::cosh(0.7)).epsilon(1e-14));

  CHECK(constant_diagonal_gap(f_diag(cycle_graph(5), f, 1.3)) < 1e-13);
  CHECK(constant_diagonal_gap(f_diag(cycle_graph(6), f, 1.0)) < 1e-12);
  CHECK(constant_diagonal_gap(f_diag(cycle_graph(5), PpscFunction::resolvent(0.2), 1.0)) < 1e-13);

  // P3 against the series sum_{k<=40} A^k / k!.
  const Matrix<double> a = path_graph(3).adjacency_as<double>();
  Matrix<double> term = Matrix<double>::Identity(3, 3);
  Matrix<double> sum = term;
  for (int k = 1; k <= 40; ++k) {
    term = term * a / k;
    sum += term;
  }
  CHECK((f_diag(path_graph(3), f, 1.0) - sum.diagonal()).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(f_diag(kks_graph(4, 5), PpscFunction::resolvent(0.5), 1.0), std::domain_error);
}

TEST_CASE("f_diag matches independent matrix functions") {
  for (const auto& g : fixture_graphs(60)) {
    CAPTURE(g.provenance());
    const Matrix<double> a = g.adjacency_as<double>();
    const auto s = eigendecompose(a);
    const double radius = s.values.cwiseAbs().maxCoeff();
    const double beta = 0.8;
    const Matrix<double> e = (beta * a).exp();
    const Vector<double> d = f_diag(s, PpscFunction::exponential(), beta);
    CHECK(((d - e.diagonal()).cwiseAbs().array() / e.diagonal().array()).maxCoeff() < 1e-10);
    CHECK((d.array() > 0.0).all());

    const double alpha = 0.5 / (beta * radius);
    const Matrix<double> inv =
        (Matrix<double>::Identity(a.rows(), a.cols()) - alpha * beta * a).inverse();
    const Vector<double> rd = f_diag(s, PpscFunction::resolvent(alpha), beta);
    CHECK(((rd - inv.diagonal()).cwiseAbs().array() / inv.diagonal().array()).maxCoeff() < 1e-10);

    // Trace identity.
    CHECK(d.sum() == doctest::Approx(f_trace(s, PpscFunction::exponential(), beta)).epsilon(1e-9));
  }
}

TEST_CASE("series f_diag equals explicit matrix powers") {
  std::vector<double> coeffs;
  for (int k = 0; k <= 40; ++k) coeffs.push_back(1.0 / (1.0 + k * k));
  const auto f = PpscFunction::series(coeffs);
  for (const auto& g : fixture_graphs(30)) {
    CAPTURE(g.provenance());
    const Matrix<double> a = g.adjacency_as<double>();
    const double beta = 0.1;
    Matrix<double> acc = Matrix<double>::Zero(a.rows(), a.cols());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
      acc = acc * (beta * a) + *it * Matrix<double>::Identity(a.rows(), a.cols());
    const Vector<double> d = f_diag(g, f, beta);
    CHECK(((d - acc.diagonal()).cwiseAbs().array() / acc.diagonal().array()).maxCoeff() < 1e-10);
  }
}

TEST_CASE("constant diagonal gap") {
  Vector<double> v(3);
  v << 3, 3, 3;
  CHECK(constant_diagonal_gap(v) == 0.0);
  Vector<double> w(2);
  w << 1, 3;
  CHECK(constant_diagonal_gap(w) == doctest::Approx(1.0));
  CHECK_THROWS_AS(constant_diagonal_gap(Vector<double>()), std::invalid_argument);
}
