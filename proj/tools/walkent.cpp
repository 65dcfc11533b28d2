// Command-line front end: one subcommand per library operation, JSON on
// stdout. Exit codes: 0 ok, 1 negative verdict, 2 usage or input error.

#include "walkent/certify.hpp"
#include "walkent/entropy.hpp"
#include "walkent/family_spec.hpp"
#include "walkent/graph_io.hpp"
#include "walkent/kks.hpp"
#include "walkent/reproduce.hpp"
#include "walkent/saff.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace walkent;
using nlohmann::json;

namespace {

class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct GraphSource {
  std::string spec;
  std::string edges;

  void attach(CLI::App* cmd, const std::string& name = "graph") {
    cmd->add_option(name, spec, "family spec, e.g. kks(4,5)");
    cmd->add_option("--edges", edges, "edge-list or JSON graph file instead of a spec");
  }

  Graph load() const {
    if (spec.empty() == edges.empty())
      throw UsageError("give exactly one of a family spec or --edges FILE");
    if (!spec.empty()) return parse_family(spec);
    std::ifstream in(edges);
    if (!in) throw UsageError("cannot open " + edges);
    if (edges.size() > 5 && edges.substr(edges.size() - 5) == ".json")
      return graph_from_json(json::parse(in));
    return read_edge_list(in, edges);
  }
};

PpscFunction parse_function(const std::string& text) {
  if (text == "exp") return PpscFunction::exponential();
  const std::string prefix = "resolvent:";
  if (text.rfind(prefix, 0) == 0) return PpscFunction::resolvent(std::stod(text.substr(prefix.size())));
  throw UsageError("unknown function '" + text + "' (expected exp or resolvent:ALPHA)");
}

json big(const BigInt& v) { return v.str(); }

json vector_json(const Vector<double>& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json entropic_json(const EntropicValue& v) {
  return {{"beta", v.beta}, {"bracket", {v.lo, v.hi}}, {"gap", v.gap}, {"function", v.function}};
}

std::vector<int> parse_classes(const std::string& text) {
  std::vector<int> out;
  if (text == "all") return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--classes expects 'all' or comma-separated ids, got '" + text + "'");
    }
  }
  return out;
}

BigMatrix class_walk_matrix(const Graph& g, WalkMode mode, bool allow_large) {
  const auto partition = walk_classes(g);
  const WalkMatrix w = walk_matrix(g, mode, allow_large);
  BigMatrix out(static_cast<Index>(partition.count()), w.cols());
  for (std::size_t c = 0; c < partition.count(); ++c)
    out.row(static_cast<Index>(c)) = w.columns.row(partition.representative(c));
  return out;
}

BigMatrix matrix_from_json(const json& doc) {
  if (!doc.is_array() || doc.empty() || !doc[0].is_array() || doc[0].empty())
    throw UsageError("--matrix expects a nonempty JSON array of rows");
  BigMatrix m(static_cast<Index>(doc.size()), static_cast<Index>(doc[0].size()));
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (!doc[i].is_array() || doc[i].size() != doc[0].size())
      throw UsageError("--matrix rows must have equal length");
    for (std::size_t j = 0; j < doc[i].size(); ++j) {
      const auto& v = doc[i][j];
      m(static_cast<Index>(i), static_cast<Index>(j)) =
          v.is_string() ? BigInt(v.get<std::string>()) : BigInt(v.get<long long>());
    }
  }
  return m;
}

void emit(const json& doc) { std::cout << doc.dump(2) << '\n'; }

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"walk entropy and entropic graph toolkit"};
  app.require_subcommand(1);
  int exit_code = 0;

  // gen
  GraphSource gen_src;
  std::string gen_format = "edgelist";
  auto* gen = app.add_subcommand("gen", "build a graph and print it");
  gen_src.attach(gen);
  gen->add_option("--format", gen_format)->check(CLI::IsMember({"edgelist", "json"}));
  gen->callback([&] {
    const Graph g = gen_src.load();
    if (gen_format == "json")
      emit(to_json(g));
    else
      std::cout << to_edge_list(g);
  });

  // classes
  GraphSource cls_src;
  auto* cls = app.add_subcommand("classes", "walk-classes of a graph");
  cls_src.attach(cls);
  cls->callback([&] {
    const auto p = walk_classes(cls_src.load());
    emit({{"classes", p.count()}, {"sizes", p.sizes()}});
  });

  // walk-matrix
  GraphSource wm_src;
  std::string wm_mode = "reduced";
  bool wm_large = false;
  auto* wm = app.add_subcommand("walk-matrix", "closed-walk counts per node and length");
  wm_src.attach(wm);
  wm->add_option("--mode", wm_mode)->check(CLI::IsMember({"reduced", "full", "lp"}));
  wm->add_flag("--allow-large", wm_large, "lift the node cap of full mode");
  wm->callback([&] {
    const WalkMatrix w = walk_matrix(wm_src.load(), walk_mode_from_string(wm_mode), wm_large);
    json rows = json::array();
    for (Index i = 0; i < w.rows(); ++i) {
      json row = json::array();
      for (Index j = 0; j < w.cols(); ++j) row.push_back(big(w.columns(i, j)));
      rows.push_back(row);
    }
    emit({{"mode", to_string(w.mode)}, {"degree", w.degree}, {"lengths", w.lengths},
          {"rows", rows}});
  });

  // entropy
  GraphSource ent_src;
  double ent_beta = 1.0;
  std::string ent_fn = "exp";
  auto* ent = app.add_subcommand("entropy", "walk entropy at one beta");
  ent_src.attach(ent);
  ent->add_option("--beta", ent_beta)->required();
  ent->add_option("--function", ent_fn, "exp or resolvent:ALPHA");
  ent->callback([&] {
    const Graph g = ent_src.load();
    const auto f = parse_function(ent_fn);
    const auto spectrum = eigendecompose(g);
    f.check_domain(ent_beta, spectrum.values.cwiseAbs().maxCoeff());
    const Vector<double> s = f_diag(spectrum, f, ent_beta);
    emit({{"beta", ent_beta},
          {"entropy", walk_entropy(s)},
          {"max_entropy", std::log(static_cast<double>(g.size()))},
          {"gap", constant_diagonal_gap(s)},
          {"function", f.describe()}});
  });

  // scan-entropic
  GraphSource scan_src;
  ScanOptions scan_opts;
  std::string scan_fn = "exp";
  auto* scan = app.add_subcommand("scan-entropic", "search beta for constant-diagonal f(beta A)");
  scan_src.attach(scan);
  scan->add_option("--beta-max", scan_opts.beta_max);
  scan->add_option("--step", scan_opts.grid_step);
  scan->add_option("--tol", scan_opts.tol);
  scan->add_option("--function", scan_fn, "exp or resolvent:ALPHA");
  scan->callback([&] {
    const auto result = scan_entropic_values(scan_src.load(), parse_function(scan_fn), scan_opts);
    json out = json::array();
    for (const auto& v : result.values) {
      json item = entropic_json(v);
      item["status"] = "entropic";
      out.push_back(item);
    }
    for (const auto& v : result.candidates) {
      json item = entropic_json(v);
      item["status"] = "candidate";
      out.push_back(item);
    }
    if (result.status == ScanStatus::walk_regular)
      std::cerr << "graph is walk-regular: every beta gives a constant diagonal\n";
    if (result.status == ScanStatus::disconnected) std::cerr << "graph is disconnected\n";
    emit(out);
  });

  // verify-cartesian
  GraphSource vc_g;
  GraphSource vc_h;
  double vc_beta = 0.0;
  double vc_tol = 1e-9;
  auto* vc = app.add_subcommand("verify-cartesian", "check G x H is entropic at beta");
  vc->add_option("G_spec", vc_g.spec, "family spec of G")->required();
  vc->add_option("H_spec", vc_h.spec, "family spec of H")->required();
  vc->add_option("--beta", vc_beta)->required();
  vc->add_option("--tol", vc_tol);
  vc->callback([&] {
    const auto r = verify_cartesian_entropic(vc_g.load(), vc_h.load(), vc_beta, vc_tol);
    emit({{"passed", r.passed},
          {"product_connected", r.product_connected},
          {"product_non_walk_regular", r.product_non_walk_regular},
          {"product_gap", r.product_gap},
          {"kronecker_error", r.kronecker_error}});
    if (!r.passed) exit_code = 1;
  });

  // verify-tensor
  GraphSource vt_g;
  GraphSource vt_h;
  double vt_beta = 0.0;
  double vt_tol = 1e-9;
  int vt_k = 0;
  Index vt_direct = 60;
  auto* vt = app.add_subcommand("verify-tensor", "build the tensor series and check G (x) H");
  vt->add_option("G_spec", vt_g.spec, "family spec of G")->required();
  vt->add_option("H_spec", vt_h.spec, "family spec of H")->required();
  vt->add_option("--beta", vt_beta)->required();
  vt->add_option("--K", vt_k, "truncation order (0 picks one)");
  vt->add_option("--tol", vt_tol);
  vt->add_option("--direct-limit", vt_direct, "largest product checked by explicit powers");
  vt->callback([&] {
    const auto r = verify_tensor_entropic(vt_g.load(), vt_beta, vt_h.load(), vt_k, vt_tol, vt_direct);
    json constants = json::array();
    for (const auto& c : r.function.walk_constants) constants.push_back(big(c));
    emit({{"passed", r.passed},
          {"truncation", r.function.truncation},
          {"tail_bound", r.function.tail_bound},
          {"coefficients", r.function.function.coefficients()},
          {"walk_constants", constants},
          {"product_size", r.product_size},
          {"separable_gap", r.separable_gap},
          {"direct_gap", r.direct_gap ? json(*r.direct_gap) : json(nullptr)},
          {"separable_vs_direct",
           r.separable_vs_direct ? json(*r.separable_vs_direct) : json(nullptr)},
          {"allowed_gap", r.allowed_gap},
          {"product_connected", r.product_connected},
          {"product_non_walk_regular", r.product_non_walk_regular}});
    if (!r.passed) exit_code = 1;
  });

  // kks-scores
  double ks_beta = 0.0;
  int ks_c = 0;
  int ks_m = 0;
  auto* ks = app.add_subcommand("kks-scores", "closed-form scores of kks(c,m)");
  ks->add_option("--beta", ks_beta)->required();
  ks->add_option("--c", ks_c)->required();
  ks->add_option("--m", ks_m)->required();
  ks->callback([&] {
    const auto s = kks_spectrum(ks_c, ks_m);
    const auto sc = kks_scores(ks_beta, ks_c, ks_m);
    const auto p = kks_pieces(ks_beta, ks_c, ks_m);
    emit({{"c", ks_c},
          {"m", ks_m},
          {"beta", ks_beta},
          {"lambda", s.lambda},
          {"multiplicities", s.multiplicity},
          {"gamma", s.gamma},
          {"IS", sc.independent},
          {"CN", sc.clique},
          {"pieces",
           {{"h1", p.h1}, {"h2", p.h2}, {"g1", p.g1}, {"g2", p.g2}, {"shared", p.shared}}}});
  });

  // kks-find-beta
  int kf_from = 0;
  int kf_to = 0;
  auto* kf = app.add_subcommand("kks-find-beta", "entropic beta of kks(c,c+1)");
  kf->add_option("--c", kf_from, "smallest c (default: the discovered threshold)");
  kf->add_option("--c-to", kf_to, "largest c (default: same as --c)");
  kf->callback([&] {
    const int c_min = kks_entropic_threshold();
    const int from = kf_from > 0 ? kf_from : c_min;
    const int to = std::max(from, kf_to);
    json results = json::array();
    for (int c = from; c <= to; ++c) {
      const auto r = find_entropic_beta_kks(c);
      json item = {{"c", r.c},
                   {"m", r.m},
                   {"status", r.status == KksBetaStatus::found ? "found" : "no-sign-change"},
                   {"delta_at_lo", r.delta_at_lo},
                   {"delta_at_hi", r.delta_at_hi},
                   {"bracket", {r.value.lo, r.value.hi}}};
      if (r.status == KksBetaStatus::found) {
        item["beta"] = r.value.beta;
        item["gap"] = r.value.gap;
      } else {
        exit_code = 1;
      }
      if (c >= 3) {
        const auto h = hyperbolic_check(1.0 / (c - 2), c, c + 1);
        item["hyperbolic"] = {{"xi", h.xi},
                              {"cosh_margin", h.cosh_margin()},
                              {"sinh_margin", h.sinh_margin()}};
      }
      results.push_back(item);
    }
    emit({{"c_min", c_min}, {"results", results}});
  });

  // kks-verify-eigen
  int ke_c = 0;
  int ke_m = 0;
  auto* ke = app.add_subcommand("kks-verify-eigen", "check the closed-form eigenbasis");
  ke->add_option("--c", ke_c)->required();
  ke->add_option("--m", ke_m)->required();
  ke->callback([&] {
    const auto s = kks_spectrum(ke_c, ke_m);
    const auto b = kks_eigenbasis(ke_c, ke_m);
    emit({{"c", ke_c},
          {"m", ke_m},
          {"lambda", s.lambda},
          {"multiplicities", s.multiplicity},
          {"strictly_ordered", s.strictly_ordered()},
          {"eigen_residual", b.eigen_residual},
          {"orthogonality_residual", b.orthogonality_residual},
          {"ok", b.ok}});
    if (!b.ok) exit_code = 1;
  });

  // certify
  GraphSource cert_src;
  std::string cert_classes = "all";
  std::string cert_mode = "lp";
  CertifyOptions cert_opts;
  int cert_k = -1;
  auto* cert = app.add_subcommand("certify", "LP collision certificate over walk-classes");
  cert_src.attach(cert);
  cert->add_option("--classes", cert_classes, "'all' or comma-separated class ids");
  cert->add_option("--mode", cert_mode)->check(CLI::IsMember({"reduced", "full", "lp"}));
  cert->add_option("--tol-pos", cert_opts.tol_pos);
  cert->add_option("--tol-feas", cert_opts.tol_feas);
  cert->add_option("--upper", cert_opts.upper, "bound on normalised variables");
  cert->add_option("--ppsc-K", cert_k, "also build PPSC coefficients up to this order");
  cert->add_flag("--allow-large", cert_opts.allow_large);
  cert->callback([&] {
    const Graph g = cert_src.load();
    cert_opts.mode = walk_mode_from_string(cert_mode);
    const auto c = certify_collision(g, parse_classes(cert_classes), cert_opts);
    json out = {{"verdict", to_string(c.verdict)},
                {"mode", to_string(c.mode)},
                {"column_indices", c.lengths},
                {"classes", c.classes},
                {"rows", c.rows},
                {"all_classes", c.all_classes},
                {"feasible", c.feasible}};
    if (c.feasible) {
      out["x"] = vector_json(c.x);
      out["scaling"] = vector_json(c.scaling);
      out["margin"] = c.margin;
      out["residual"] = c.residual;
      out["exact_spread"] = c.exact_spread;
    }
    if (cert_k >= 0 && c.verdict == Verdict::certified) {
      const auto p = construct_ppsc_coefficients(g, c, cert_k);
      out["ppsc"] = {{"coefficients", p.coefficients}, {"halvings", p.halvings},
                     {"tail_bound", p.tail_bound},     {"spread", p.spread},
                     {"allowed_spread", p.allowed_spread}, {"constant", p.constant}};
    }
    emit(out);
    if (c.verdict != Verdict::certified) exit_code = 1;
  });

  // saff
  GraphSource saff_src;
  std::string saff_mode = "reduced";
  std::string saff_matrix;
  Index saff_cap = saff_default_cap;
  bool saff_large = false;
  auto* saff = app.add_subcommand("saff", "set-average flip-flop search with Farkas refutation");
  saff_src.attach(saff);
  saff->add_option("--mode", saff_mode)->check(CLI::IsMember({"reduced", "full", "lp"}));
  saff->add_option("--matrix", saff_matrix, "JSON rows, e.g. [[1],[2]], instead of a graph");
  saff->add_option("--size-cap", saff_cap);
  saff->add_flag("--allow-large", saff_large);
  saff->callback([&] {
    const BigMatrix m = saff_matrix.empty()
                            ? class_walk_matrix(saff_src.load(), walk_mode_from_string(saff_mode),
                                                saff_large)
                            : matrix_from_json(json::parse(saff_matrix));
    const auto r = saff_check(m, saff_cap, saff_large);
    json out = {{"satisfied", r.satisfied},
                {"distinct_rows", r.distinct_rows},
                {"copy_cap", r.copy_cap}};
    if (!r.satisfied) {
      const auto f = farkas_refutation(m, r.s, r.t);
      json y = json::array();
      for (Index i = 0; i < f.y.size(); ++i) y.push_back(f.y(i).str());
      json ym = json::array();
      for (Index j = 0; j < f.y_times_m.size(); ++j) ym.push_back(f.y_times_m(j).str());
      out["S"] = r.s;
      out["T"] = r.t;
      out["farkas"] = {{"delta", f.delta.str()}, {"y", y},           {"yT_M", ym},
                       {"yT_e", f.y_times_e.str()}, {"valid", f.valid}};
      exit_code = 1;
    }
    emit(out);
  });

  // reproduce
  int rep_only = 0;
  auto* rep = app.add_subcommand("reproduce", "run the acceptance criteria and print a table");
  rep->add_option("--criterion", rep_only, "run only this criterion (1-9)")
      ->check(CLI::Range(1, 9));
  rep->callback([&] {
    const auto results = run_acceptance(rep_only > 0 ? std::optional<int>(rep_only) : std::nullopt);
    print_acceptance(std::cout, results);
    for (const auto& r : results)
      if (!r.passed()) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const FamilySpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return exit_code;
}
