#include "walkent/reproduce.hpp"

#include "walkent/entropy.hpp"
#include "walkent/family_spec.hpp"
#include "walkent/kks.hpp"
#include "walkent/saff.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace walkent {

bool CriterionResult::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

std::string num(double v, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

template <typename Range>
std::string join(const Range& values) {
  std::ostringstream s;
  bool first = true;
  for (const auto& v : values) {
    s << (first ? "" : "/") << v;
    first = false;
  }
  return s.str();
}

void add(CriterionResult& r, std::string description, bool passed, std::string detail = {}) {
  r.checks.push_back({std::move(description), passed, std::move(detail)});
}

// Runs `body`, turning an escaped exception into a failed check.
void guarded(CriterionResult& r, const std::string& what, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    add(r, what, false, std::string("threw: ") + e.what());
  }
}

BigMatrix class_rows(const Graph& g, WalkMode mode) {
  const auto partition = walk_classes(g);
  const WalkMatrix w = walk_matrix(g, mode);
  BigMatrix out(static_cast<Index>(partition.count()), w.cols());
  for (std::size_t c = 0; c < partition.count(); ++c)
    out.row(static_cast<Index>(c)) = w.columns.row(partition.representative(c));
  return out;
}

// Unique solution of a x = b over Q, or nothing when a lacks full column
// rank or the system is inconsistent.
std::optional<RationalVector> solve_unique(RationalMatrix a, RationalVector b) {
  const Index rows = a.rows();
  const Index cols = a.cols();
  Index rank = 0;
  for (Index col = 0; col < cols; ++col) {
    Index pivot = rank;
    while (pivot < rows && a(pivot, col) == 0) ++pivot;
    if (pivot == rows) return std::nullopt;
    a.row(pivot).swap(a.row(rank));
    std::swap(b(pivot), b(rank));
    for (Index i = 0; i < rows; ++i) {
      if (i == rank || a(i, col) == 0) continue;
      const BigRational f = a(i, col) / a(rank, col);
      for (Index j = 0; j < cols; ++j) a(i, j) -= f * a(rank, j);
      b(i) -= f * b(rank);
    }
    ++rank;
  }
  for (Index i = rank; i < rows; ++i)
    if (b(i) != 0) return std::nullopt;
  RationalVector x(cols);
  for (Index i = 0; i < cols; ++i) x(i) = b(i) / a(i, i);
  return x;
}

// Basic nonnegative solutions of a x = b, one per column subset.
std::vector<RationalVector> basic_solutions(const RationalMatrix& a, const RationalVector& b) {
  std::vector<RationalVector> out;
  const Index n = a.cols();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<Index> cols;
    for (Index j = 0; j < n; ++j)
      if (mask & (1u << j)) cols.push_back(j);
    RationalMatrix sub(a.rows(), static_cast<Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<Index>(k)) = a.col(cols[k]);
    const auto x = solve_unique(sub, b);
    if (!x) continue;
    if (std::any_of(x->begin(), x->end(), [](const BigRational& v) { return v < 0; })) continue;
    RationalVector full = RationalVector::Constant(n, BigRational(0));
    for (std::size_t k = 0; k < cols.size(); ++k) full(cols[k]) = (*x)(static_cast<Index>(k));
    out.push_back(full);
  }
  return out;
}

} // namespace

const std::vector<std::string>& fixture_specs() {
  static const std::vector<std::string> specs = {
      "kks(2,3)",        "kks(3,4)",        "kks(4,5)",
      "path(3)",         "path(4)",         "path(5)",
      "cycle(5)",        "cycle(6)",        "complete(4)",
      "complete(5)",     "spider(3,2)",     "spider(4,2)",
      "spider(5,1)",     "spidercycle(3,2,4)", "spidertorus(4,2,5,3)",
      "cart(kks(4,5),cycle(5))", "cart(path(3),path(3))", "cart(cycle(3),cycle(4))",
      "tensor(kks(3,4),cycle(3))", "cart(path(2),path(4))"};
  return specs;
}

std::vector<std::vector<long long>> enumerate_closed_walks(const Graph& g, int max_length) {
  const auto n = static_cast<std::size_t>(g.size());
  std::vector<std::vector<long long>> counts(static_cast<std::size_t>(max_length + 1),
                                             std::vector<long long>(n, 0));
  std::function<void(Index, Index, int)> walk = [&](Index start, Index at, int depth) {
    if (at == start) ++counts[static_cast<std::size_t>(depth)][static_cast<std::size_t>(start)];
    if (depth == max_length) return;
    for (Index next : g.neighbours()[static_cast<std::size_t>(at)]) walk(start, next, depth + 1);
  };
  for (Index i = 0; i < g.size(); ++i) walk(i, i, 0);
  return counts;
}

PositiveSolutionKind exact_positive_solution(const BigMatrix& w) {
  const RationalMatrix a = to_rational(w);
  const Index n = a.cols();
  const auto vertices = basic_solutions(a, RationalVector::Constant(a.rows(), BigRational(1)));
  if (vertices.empty()) return PositiveSolutionKind::none;
  RationalMatrix cone(a.rows() + 1, n);
  cone.topRows(a.rows()) = a;
  cone.row(a.rows()).setConstant(BigRational(1));
  RationalVector cone_rhs = RationalVector::Constant(a.rows() + 1, BigRational(0));
  cone_rhs(a.rows()) = 1;
  const auto rays = basic_solutions(cone, cone_rhs);
  for (Index j = 0; j < n; ++j) {
    auto positive = [j](const RationalVector& v) { return v(j) > 0; };
    if (std::none_of(vertices.begin(), vertices.end(), positive) &&
        std::none_of(rays.begin(), rays.end(), positive))
      return PositiveSolutionKind::nonnegative_only;
  }
  return PositiveSolutionKind::positive;
}

CriterionResult check_walk_classes() {
  CriterionResult r{1, "walk-class structure (exact)", {}};
  const std::vector<std::pair<std::string, std::vector<Index>>> cases = {
      {"kks(4,5)", {4, 20}}, {"spidertorus(4,2,5,3)", {15, 60, 60}}};
  for (const auto& [spec, expected] : cases) {
    guarded(r, spec, [&] {
      const auto sizes = walk_classes(parse_family(spec)).sizes();
      add(r, spec + " has " + std::to_string(expected.size()) + " classes of sizes " +
                 join(expected),
          sizes == expected, "got " + join(sizes));
    });
  }
  return r;
}

CriterionResult check_kks_eigensystem() {
  CriterionResult r{2, "closed-form eigensystem of kks(c,m) (eigenvalues 1e-9, residuals 1e-10)", {}};
  for (auto [c, m] : std::vector<std::pair<int, int>>{{2, 3}, {3, 4}, {4, 5}, {5, 6}}) {
    const std::string name = "kks(" + std::to_string(c) + "," + std::to_string(m) + ")";
    guarded(r, name, [&, c = c, m = m] {
      const KksSpectrum s = kks_spectrum(c, m);
      std::vector<std::pair<double, Index>> closed;
      for (std::size_t t = 0; t < 6; ++t)
        if (s.multiplicity[t] > 0) closed.emplace_back(s.lambda[t], s.multiplicity[t]);
      std::sort(closed.begin(), closed.end(), [](auto a, auto b) { return a.first > b.first; });
      std::vector<std::pair<double, Index>> merged;
      for (const auto& entry : closed) {
        if (!merged.empty() && std::abs(merged.back().first - entry.first) < 1e-9)
          merged.back().second += entry.second;
        else
          merged.push_back(entry);
      }
      const auto clusters = cluster_eigenvalues(eigendecompose(kks_graph(c, m)).values);
      bool match = clusters.size() == merged.size();
      double worst = 0.0;
      for (std::size_t i = 0; match && i < merged.size(); ++i) {
        worst = std::max(worst, std::abs(clusters[i].value - merged[i].first));
        match = clusters[i].multiplicity == merged[i].second;
      }
      add(r, name + " eigenvalues and multiplicities match Jacobi", match && worst < 1e-9,
          "max |diff| " + num(worst, 3));
      const KksEigenbasis basis = kks_eigenbasis(c, m);
      add(r, name + " eigenbasis residuals", basis.eigen_residual < 1e-10 &&
                                                 basis.orthogonality_residual < 1e-10,
          "|AV-VL| " + num(basis.eigen_residual, 3) + ", |VtV-I| " +
              num(basis.orthogonality_residual, 3));
    });
  }
  return r;
}

CriterionResult check_kks_entropic_values() {
  CriterionResult r{3, "entropic values of kks(4,5) in (0,3] (gap 1e-10)", {}};
  guarded(r, "scan", [&] {
    const Graph g = kks_graph(4, 5);
    const auto scan = scan_entropic_values(g, PpscFunction::exponential(), {3.0, 0.01, 1e-10});
    add(r, "exactly two entropic values", scan.values.size() == 2,
        "found " + std::to_string(scan.values.size()) + ", candidates " +
            std::to_string(scan.candidates.size()));
    const double golden[] = {kks45_golden_beta_low, kks45_golden_beta_high};
    for (std::size_t i = 0; i < std::min<std::size_t>(2, scan.values.size()); ++i) {
      const auto& v = scan.values[i];
      const double gap =
          constant_diagonal_gap(f_diag(g, PpscFunction::exponential(), v.beta));
      add(r, "beta* = " + num(golden[i], 16) + " reproduced to 1e-9 with gap < 1e-10",
          std::abs(v.beta - golden[i]) < 1e-9 && gap < 1e-10,
          "beta " + num(v.beta, 16) + ", gap " + num(gap, 3));
    }
  });
  return r;
}

CriterionResult check_cartesian_invariance() {
  CriterionResult r{4, "cartesian products stay entropic at both golden values (gap 1e-9)", {}};
  const Graph g = kks_graph(4, 5);
  for (const std::string spec : {"cycle(3)", "cart(cycle(5),cycle(3))"}) {
    for (double beta : {kks45_golden_beta_low, kks45_golden_beta_high}) {
      const std::string name = "kks(4,5) x " + spec + " at " + num(beta, 8);
      guarded(r, name, [&] {
        const auto report = verify_cartesian_entropic(g, parse_family(spec), beta, 1e-9);
        add(r, name, report.passed && report.product_gap < 1e-9,
            std::string(report.product_connected ? "connected" : "disconnected") +
                (report.product_non_walk_regular ? ", non-walk-regular" : ", walk-regular") +
                ", gap " + num(report.product_gap, 3) + ", kron err " +
                num(report.kronecker_error, 3));
      });
    }
  }
  return r;
}

CriterionResult check_beta_accumulation() {
  CriterionResult r{5, "entropic values of kks(c,c+1) accumulate at 0", {}};
  guarded(r, "sweep", [&] {
    const int c_min = kks_entropic_threshold();
    add(r, "threshold C_min discovered", c_min >= 3, "C_min = " + std::to_string(c_min));
    double previous = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    double literal_worst = 0.0;
    double corrected_worst = 0.0;
    std::vector<int> h1_fail;
    std::vector<int> h2_fail;
    for (int c = c_min; c <= c_min + 5; ++c) {
      const auto found = find_entropic_beta_kks(c);
      const double bound = 1.0 / (c - 2);
      const double beta = found.value.beta;
      const bool inside = found.status == KksBetaStatus::found && beta > 0.0 && beta < bound;
      decreasing = decreasing && beta < previous;
      previous = beta;
      const double gap =
          constant_diagonal_gap(f_diag(kks_graph(c, c + 1), PpscFunction::exponential(), beta));
      add(r, "c = " + std::to_string(c) + ": beta_c in (0, 1/(c-2)), explicit gap < 1e-9",
          inside && gap < 1e-9,
          "beta " + num(beta, 12) + ", bound " + num(bound, 6) + ", gap " + num(gap, 3));

      for (int k = 1; k <= 8; ++k) {
        const double b = bound * k / 8.0;
        const KksScores s = kks_scores(b, c, c + 1);
        const KksPieces p = kks_pieces(b, c, c + 1);
        literal_worst = std::max({literal_worst, std::abs(p.h1 + p.h2 - s.clique) / s.clique,
                                  std::abs(p.g1 + p.g2 - s.independent) / s.independent});
        corrected_worst =
            std::max({corrected_worst, std::abs(p.h1 + p.h2 + p.shared - s.clique) / s.clique,
                      std::abs(p.g1 + p.g2 + p.shared - s.independent) / s.independent});
      }
      const KksPieces at = kks_pieces(bound, c, c + 1);
      if (!(at.h1 > at.g1)) h1_fail.push_back(c);
      if (!(at.h2 > at.g2)) h2_fail.push_back(c);
    }
    add(r, "beta_c strictly decreasing", decreasing);
    add(r, "h1+h2 = CN and g1+g2 = IS to 1e-12 relative", literal_worst < 1e-12,
        "max relative mismatch " + num(literal_worst, 3));
    add(r, "h1+h2+X = CN and g1+g2+X = IS to 1e-12 relative (X: shared lambda_3/lambda_6 term)",
        corrected_worst < 1e-12, "max relative mismatch " + num(corrected_worst, 3));
    add(r, "h1 > g1 at beta = 1/(c-2)", h1_fail.empty(),
        h1_fail.empty() ? "all c" : "fails for c = " + join(h1_fail));
    add(r, "h2 > g2 at beta = 1/(c-2)", h2_fail.empty(),
        h2_fail.empty() ? "all c" : "fails for c = " + join(h2_fail));
  });
  return r;
}

CriterionResult check_tensor_family() {
  CriterionResult r{6, "tensor products with a walk-regular triangle-containing factor", {}};
  const Graph g = kks_graph(4, 5);
  guarded(r, "kks(4,5) (x) cycle(3)", [&] {
    const auto report = verify_tensor_entropic(g, kks45_golden_beta_low, cycle_graph(3), 0, 1e-9, 80);
    add(r, "kks(4,5) (x) cycle(3) passes", report.passed,
        "K " + std::to_string(report.function.truncation) + ", separable gap " +
            num(report.separable_gap, 3) + ", direct gap " +
            (report.direct_gap ? num(*report.direct_gap, 3) : std::string("n/a")) +
            ", allowed " + num(report.allowed_gap, 3));
  });
  try {
    verify_tensor_entropic(g, kks45_golden_beta_low, cycle_graph(4));
    add(r, "cycle(4) factor rejected for lacking a triangle", false, "accepted");
  } catch (const PreconditionError& e) {
    const std::string what = e.what();
    add(r, "cycle(4) factor rejected for lacking a triangle",
        what.find("triangle") != std::string::npos, what);
  }
  return r;
}

CriterionResult check_collision_certificate() {
  CriterionResult r{7, "collision certificate for spidertorus(4,2,5,3) (t* 1e-9, spread 1e-8)", {}};
  guarded(r, "certify", [&] {
    const Graph g = parse_family("spidertorus(4,2,5,3)");
    const auto cert = certify_collision(g);
    add(r, "verdict certified with t* > 1e-9 and exact spread < 1e-8",
        cert.verdict == Verdict::certified && cert.margin > 1e-9 && cert.exact_spread < 1e-8,
        to_string(cert.verdict) + ", t* " + num(cert.margin) + ", spread " +
            num(cert.exact_spread, 3));
    const int k = minimal_poly_degree(g) + 30;
    const auto ppsc = construct_ppsc_coefficients(g, cert, k);
    const double smallest =
        *std::min_element(ppsc.coefficients.begin(), ppsc.coefficients.end());
    add(r, "PPSC prefix positive and constant-diagonal within its tail bound",
        smallest > 0.0 && ppsc.constant,
        "K " + std::to_string(k) + ", min c_k " + num(smallest, 3) + ", spread " +
            num(ppsc.spread, 3) + ", allowed " + num(ppsc.allowed_spread, 3));
  });
  return r;
}

CriterionResult check_negative_certificate() {
  CriterionResult r{8, "negative certificate for path(3)", {}};
  guarded(r, "path(3)", [&] {
    const Graph g = path_graph(3);
    const auto cert = certify_collision(g, {}, {WalkMode::reduced});
    add(r, "reduced system infeasible, not entropic",
        cert.verdict == Verdict::infeasible_not_entropic, to_string(cert.verdict));
    const BigMatrix w = class_rows(g, WalkMode::reduced);
    const auto saff = saff_check(w);
    add(r, "SAFF counterexample on the collapsed walk matrix", !saff.satisfied);
    if (!saff.satisfied) {
      const auto farkas = farkas_refutation(w, saff.s, saff.t);
      add(r, "Farkas vector has y^T W >= 0 and y^T e < 0", farkas.valid,
          "delta " + farkas.delta.str() + ", y^T e " + farkas.y_times_e.str());
    }
  });
  return r;
}

CriterionResult check_property_suites() {
  CriterionResult r{9, "property suites over the fixture graphs", {}};
  std::vector<Graph> graphs;
  for (const auto& spec : fixture_specs()) graphs.push_back(parse_family(spec));
  const auto f = PpscFunction::exponential();

  guarded(r, "(a)", [&] {
    int cases = 0;
    int failures = 0;
    int undecided = 0;
    for (const auto& g : graphs) {
      const auto spectrum = eigendecompose(g);
      for (double beta : {0.1, 0.5, 1.0, 2.0, 3.0}) {
        ++cases;
        const Vector<double> s = f_diag(spectrum, f, beta);
        const double n = static_cast<double>(g.size());
        double deficit = 0.0;  // log n - entropy, as KL divergence from uniform
        const double total = s.sum();
        for (Index i = 0; i < s.size(); ++i) deficit += s(i) / total * std::log(n * s(i) / total);
        const double gap = constant_diagonal_gap(s);
        const bool bounded = deficit >= -1e-12;
        bool iff = true;
        if (gap < 1e-10)
          iff = deficit < 1e-12;
        else if (gap >= 1e-6)
          iff = deficit > 0.0;
        else
          ++undecided;
        if (!(bounded && iff)) ++failures;
      }
    }
    add(r, "(a) entropy <= log n, equal iff zero gap", failures == 0 && undecided == 0,
        std::to_string(cases) + " cases, " + std::to_string(failures) + " failures, " +
            std::to_string(undecided) + " with gap in [1e-10, 1e-6)");
  });

  guarded(r, "(b)", [&] {
    int checked = 0;
    bool ok = true;
    for (const auto& g : graphs) {
      if (g.size() > 12) continue;
      ++checked;
      const auto brute = enumerate_closed_walks(g, 6);
      const auto exact = closed_walk_counts(g, 6);
      for (std::size_t l = 0; l <= 6; ++l)
        for (Index i = 0; i < g.size(); ++i)
          ok = ok && exact[l](i) == brute[l][static_cast<std::size_t>(i)];
    }
    add(r, "(b) walk counts equal brute-force enumeration (n <= 12, l <= 6)", ok && checked > 0,
        std::to_string(checked) + " graphs");
  });

  guarded(r, "(c)", [&] {
    std::vector<BigMatrix> systems;
    auto literal = [](std::initializer_list<std::initializer_list<long>> rows) {
      BigMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
      Index i = 0;
      for (const auto& row : rows) {
        Index j = 0;
        for (long v : row) m(i, j++) = v;
        ++i;
      }
      return m;
    };
    systems.push_back(literal({{1}, {2}}));
    systems.push_back(literal({{1, 1}, {1, 2}}));
    systems.push_back(literal({{1, 1}, {3, 2}}));
    systems.push_back(literal({{2, 1}, {1, 2}}));
    systems.push_back(literal({{1, 0}, {0, 1}}));
    systems.push_back(literal({{0, 1}, {0, 2}}));
    systems.push_back(literal({{1, 2}, {2, 4}}));
    systems.push_back(literal({{1, 2, 3}, {3, 2, 1}, {2, 2, 2}}));
    systems.push_back(literal({{1, 0, 1}, {0, 1, 1}, {1, 1, 0}}));
    systems.push_back(literal({{1, 3, 0}, {2, 1, 0}}));
    for (const auto& g : graphs) {
      if (walk_classes(g).count() > 3) continue;
      for (auto mode : {WalkMode::reduced, WalkMode::lp}) {
        BigMatrix w = class_rows(g, mode);
        if (w.cols() >= 1 && w.cols() <= 3) systems.push_back(std::move(w));
      }
    }
    int mismatches = 0;
    for (const auto& w : systems) {
      const auto kind = exact_positive_solution(w);
      const Verdict v = classify(solve_positive_system(w), true);
      const Verdict expected = kind == PositiveSolutionKind::positive ? Verdict::certified
                               : kind == PositiveSolutionKind::none
                                   ? Verdict::infeasible_not_entropic
                                   : Verdict::inconclusive;
      if (v != expected) ++mismatches;
    }
    add(r, "(c) simplex verdicts match the exact rational oracle on <= 3x3 systems",
        mismatches == 0,
        std::to_string(systems.size()) + " systems, " + std::to_string(mismatches) +
            " mismatches");
  });

  guarded(r, "(d)", [&] {
    int violations = 0;
    for (const auto& g : graphs) {
      const Vector<double> s = f_diag(g, f, 1e-3);
      const auto deg = g.degrees();
      for (Index i = 0; i < g.size(); ++i)
        for (Index j = 0; j < g.size(); ++j)
          if (deg[static_cast<std::size_t>(i)] > deg[static_cast<std::size_t>(j)] && !(s(i) > s(j))) ++violations;
    }
    add(r, "(d) at beta = 1e-3 a higher degree means a higher score", violations == 0,
        std::to_string(violations) + " violations");
  });
  return r;
}

std::vector<CriterionResult> run_acceptance(std::optional<int> only) {
  using Fn = CriterionResult (*)();
  const Fn all[] = {check_walk_classes,          check_kks_eigensystem,
                    check_kks_entropic_values,   check_cartesian_invariance,
                    check_beta_accumulation,     check_tensor_family,
                    check_collision_certificate, check_negative_certificate,
                    check_property_suites};
  std::vector<CriterionResult> out;
  for (int i = 0; i < 9; ++i)
    if (!only || *only == i + 1) out.push_back(all[i]());
  return out;
}

void print_acceptance(std::ostream& out, const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    out << (r.passed() ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.title << '\n';
    for (const auto& c : r.checks) {
      out << "        " << (c.passed ? "ok  " : "FAIL") << ' ' << c.description;
      if (!c.detail.empty()) out << " [" << c.detail << ']';
      out << '\n';
    }
  }
}

} // namespace walkent
