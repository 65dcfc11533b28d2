#include "fixtures.hpp"
#include "walkent/certify.hpp"
#include "walkent/entropy.hpp"
#include "walkent/saff.hpp"
#include "walkent/simplex.hpp"

#include <doctest.h>

#include <random>

using namespace walkent;

namespace {

BigMatrix big(std::initializer_list<std::initializer_list<long>> rows) {
  BigMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (long v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

} // namespace

TEST_CASE("simplex on small programs") {
  // max x + y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6.
  Matrix<double> a(2, 4);
  a << 1, 2, 1, 0, 3, 1, 0, 1;
  Vector<double> b(2);
  b << 4, 6;
  Vector<double> c(4);
  c << 1, 1, 0, 0;
  const auto r = simplex_maximize(a, b, c);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == doctest::Approx(2.8));
  CHECK(r.x(0) == doctest::Approx(1.6));
  CHECK(r.x(1) == doctest::Approx(1.2));

  Matrix<double> inf(2, 1);
  inf << 1, 1;
  Vector<double> ib(2);
  ib << 1, 2;
  CHECK(simplex_maximize(inf, ib, Vector<double>::Ones(1)).status == LpStatus::infeasible);

  Matrix<double> unb(1, 2);
  unb << 1, -1;
  Vector<double> ub(1);
  ub << 1;
  Vector<double> uc(2);
  uc << 1, 0;
  CHECK(simplex_maximize(unb, ub, uc).status == LpStatus::unbounded);

  // Redundant equality rows.
  Matrix<double> red(2, 2);
  red << 1, 1, 2, 2;
  Vector<double> rb(2);
  rb << 1, 2;
  Vector<double> rc(2);
  rc << 1, 0;
  const auto rr = simplex_maximize(red, rb, rc);
  REQUIRE(rr.status == LpStatus::optimal);
  CHECK(rr.objective == doctest::Approx(1.0));
}

TEST_CASE("collision certificates") {
  const auto st = certify_collision(spider_torus(4, 2, 5, 3));
  CHECK(st.verdict == Verdict::certified);
  CHECK(st.margin == doctest::Approx(0.04020).epsilon(1e-3));
  CHECK(st.all_classes);
  CHECK(st.rows.size() == 3);

  CertifyOptions reduced;
  reduced.mode = WalkMode::reduced;
  CHECK(certify_collision(spider_torus(4, 2, 5, 3), {}, reduced).margin ==
        doctest::Approx(0.04188).epsilon(1e-3));
  CHECK(certify_collision(kks_graph(4, 5), {}, reduced).verdict == Verdict::certified);
  CHECK(certify_collision(kks_graph(4, 5)).margin == doctest::Approx(0.1005).epsilon(1e-3));

  CHECK(certify_collision(path_graph(3), {}, reduced).verdict == Verdict::infeasible_not_entropic);
  CHECK(certify_collision(path_graph(3)).verdict == Verdict::inconclusive);
  CHECK(certify_collision(path_graph(3), {0}, reduced).verdict == Verdict::certified);
  CHECK(certify_collision(path_graph(5), {0, 1}, reduced).verdict == Verdict::infeasible_subset);

  CHECK_THROWS_AS(certify_collision(path_graph(3), {7}), std::invalid_argument);
  CHECK_THROWS_AS(certify_collision(from_edges(4, {{0, 1}, {2, 3}}, "split")),
                  std::invalid_argument);
  CHECK(to_string(Verdict::infeasible_subset) == "infeasible-subset");
}

TEST_CASE("certified solutions satisfy the system") {
  for (const auto& g : fixture_graphs(150)) {
    CAPTURE(g.provenance());
    if (!is_connected(g)) continue;
    const auto cert = certify_collision(g);
    if (cert.verdict != Verdict::certified) continue;
    const auto w = walk_matrix(g, WalkMode::lp);
    const Vector<double> x = cert.unscaled();
    CHECK((x.array() > 0.0).all());
    Vector<double> d = Vector<double>::Zero(g.size());
    for (Index j = 0; j < w.cols(); ++j)
      for (Index i = 0; i < g.size(); ++i) d(i) += x(j) * w.columns(i, j).convert_to<double>();
    CHECK(constant_diagonal_gap(d) < 1e-8);
  }
}

TEST_CASE("ppsc construction") {
  const Graph st = spider_torus(4, 2, 5, 3);
  const auto cert = certify_collision(st);
  const int m = minimal_poly_degree(st);
  const auto p = construct_ppsc_coefficients(st, cert, m + 30);
  CHECK(p.constant);
  CHECK(p.degree == m);
  for (double c : p.coefficients) CHECK(c > 0.0);
  CHECK(p.tail_bound < 1e-3);
  CHECK(p.spread <= p.allowed_spread);
  CHECK_THROWS_AS(construct_ppsc_coefficients(st, cert, m - 1), std::invalid_argument);

  CertifyOptions reduced;
  reduced.mode = WalkMode::reduced;
  const Graph kks = kks_graph(4, 5);
  const auto pk = construct_ppsc_coefficients(kks, certify_collision(kks, {}, reduced), 40);
  CHECK(pk.constant);
  for (double c : pk.coefficients) CHECK(c > 0.0);

  // Walk-regular: every diagonal is constant, the certificate is trivial.
  const auto c5 = certify_collision(cycle_graph(5));
  CHECK(c5.verdict == Verdict::certified);
  CHECK(construct_ppsc_coefficients(cycle_graph(5), c5, 10).constant);
}

TEST_CASE("saff and farkas examples") {
  const auto none = saff_check(big({{1}, {2}}));
  CHECK_FALSE(none.satisfied);
  CHECK(none.s == std::vector<Index>{1});
  CHECK(none.t == std::vector<Index>{0});
  const auto f = farkas_refutation(big({{1}, {2}}), none.s, none.t);
  CHECK(f.valid);
  CHECK(f.delta == 1);
  CHECK(f.y(0) == -2);
  CHECK(f.y(1) == 1);
  CHECK(f.y_times_e == -1);

  CHECK(saff_check(big({{1, 2}, {2, 1}})).satisfied);
  CHECK(saff_check(big({{1, 0}, {0, 1}})).satisfied);
  CHECK_FALSE(saff_check(big({{1, 1}, {2, 2}, {3, 1}})).satisfied);

  BigMatrix wide(15, 2);
  for (Index i = 0; i < 15; ++i) {
    wide(i, 0) = i + 1;
    wide(i, 1) = 15 - i;
  }
  CHECK_THROWS_AS(saff_check(wide), CostGuardError);
  CHECK(saff_check(BigMatrix(BigMatrix::Ones(15, 2))).distinct_rows == 1);
  CHECK_THROWS_AS(saff_check(big({{-1}, {1}})), std::invalid_argument);

  const BigMatrix m = big({{1}, {2}});
  CHECK_THROWS_AS(farkas_refutation(m, {}, {0}), PreconditionError);
  CHECK_THROWS_AS(farkas_refutation(m, {0}, {1}), PreconditionError);
  CHECK_THROWS_AS(farkas_refutation(m, {1}, {1}), PreconditionError);
  CHECK_THROWS_AS(farkas_refutation(m, {1, 1}, {0}), PreconditionError);
  CHECK_THROWS_AS(farkas_refutation(m, {2}, {0}), PreconditionError);
}

TEST_CASE("lp, saff and the exact oracle agree on small systems") {
  std::mt19937 rng(20261016);
  std::uniform_int_distribution<int> entry(0, 4);
  int agreements = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index rows = 2 + trial % 3;
    const Index cols = 1 + (trial / 3) % 3;
    BigMatrix w(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) w(i, j) = entry(rng);
    const auto kind = exact_positive_solution(w);
    const auto lp = solve_positive_system(w);
    const auto saff = saff_check(w);
    CAPTURE(trial);
    if (kind == PositiveSolutionKind::positive) {
      CHECK(lp.feasible);
      CHECK(lp.margin > 0.0);
      CHECK(saff.satisfied);
    }
    if (kind == PositiveSolutionKind::none) CHECK_FALSE(lp.feasible);
    if (!saff.satisfied) {
      CHECK(kind != PositiveSolutionKind::positive);
      bool zero_t_average = false;
      for (Index j = 0; j < cols; ++j) {
        BigInt sum = 0;
        for (Index i : saff.t) sum += w(i, j);
        zero_t_average = zero_t_average || sum == 0;
      }
      if (zero_t_average)
        CHECK_THROWS_AS(farkas_refutation(w, saff.s, saff.t), PreconditionError);
      else
        CHECK(farkas_refutation(w, saff.s, saff.t).valid);
    }
    ++agreements;
  }
  CHECK(agreements == 200);
}
