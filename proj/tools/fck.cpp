// Command-line front end: verify, compute and tower reports as JSON.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fck/fck.hpp"

using namespace fck;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string ring = "q";
  unsigned n = 1;
  unsigned truncate = 2;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::size_t instances = 20;
  std::string window = "-6..6";
  std::string out;
  std::string functor = "identity";
  std::string args;
  std::string b_spec;
  std::string context_file;
  std::string input;
  unsigned m = 0;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Window parse_window(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) throw UsageError("window must look like A..B, got " + s);
  try {
    Window w{std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    if (w.lo > w.hi) throw UsageError("empty window " + s);
    return w;
  } catch (const std::logic_error&) {
    throw UsageError("bad window " + s);
  }
}

/// "0", "R", "R[k]" or "R^r[k]": a complex with zero differential.
ChainComplex parse_complex(const std::string& s, const Ring& ring) {
  if (s.empty() || s == "0") return ChainComplex::zero(ring);
  if (s[0] == '@') return complex_from_json(read_json_file(s.substr(1)));
  if (s[0] != 'R') throw UsageError("bad complex spec: " + s);
  std::size_t rank = 1;
  int degree = 0;
  std::size_t pos = 1;
  try {
    if (pos < s.size() && s[pos] == '^') {
      std::size_t used = 0;
      rank = std::stoul(s.substr(pos + 1), &used);
      pos += 1 + used;
    }
    if (pos < s.size()) {
      if (s[pos] != '[' || s.back() != ']') throw UsageError("bad complex spec: " + s);
      degree = std::stoi(s.substr(pos + 1, s.size() - pos - 2));
    }
  } catch (const std::logic_error&) {
    throw UsageError("bad complex spec: " + s);
  }
  return ChainComplex::concentrated(ring, degree, rank);
}

ContextPtr parse_context(const Options& o, const Ring& ring) {
  if (!o.context_file.empty()) {
    Json j = read_json_file(o.context_file);
    ChainMap eta = chain_map_from_json(j.at("eta"));
    if (eta.ring() != ring) throw UsageError("context ring differs from --ring");
    return make_context(eta);
  }
  if (!o.b_spec.empty()) {
    ChainComplex b = parse_complex(o.b_spec, ring);
    return make_context(ChainMap(ChainComplex::zero(ring), b));
  }
  return based_context(ring);
}

/// "A", "B", a complex spec Y (giving B + Y with the summand inclusion as
/// unit), or "@file" holding an object bundle.
EtaObject parse_object(const std::string& s, const ContextPtr& ctx) {
  if (s == "A") return initial_object(ctx);
  if (s == "B") return terminal_object(ctx);
  if (s.size() > 1 && s[0] == '@') {
    Json j = read_json_file(s.substr(1));
    if (j.contains("X")) {
      EtaObject x = eta_object_from_json(j);
      if (x.ctx->a != ctx->a || x.ctx->b != ctx->b || x.ctx->eta != ctx->eta)
        throw UsageError(s + " lives over a different context");
      return make_object(ctx, x.x, x.unit, x.aug);
    }
  }
  ChainComplex y = parse_complex(s, ctx->ring);
  if (ctx->is_based()) return based_object(ctx, y);
  DirectSum d = direct_sum(ctx->ring, {ctx->b, y});
  return make_object(ctx, d.sum, d.inclusions[0] * ctx->eta, d.projections[0]);
}

std::vector<EtaObject> parse_objects(const std::string& s, const ContextPtr& ctx) {
  std::vector<EtaObject> out;
  std::stringstream in(s);
  for (std::string tok; std::getline(in, tok, ',');) out.push_back(parse_object(tok, ctx));
  return out;
}

Json window_json(Window w) { return {{"lo", w.lo}, {"hi", w.hi}}; }

Json betti_json(const std::map<int, std::size_t>& m) {
  Json out = Json::array();
  for (auto [k, b] : m) out.push_back({{"k", k}, {"rank", b}});
  return out;
}

std::string summary_line(const Json& t) {
  std::string s;
  for (const auto& row : t) {
    if (row.at("rank").get<std::size_t>() == 0 && !row.contains("torsion")) continue;
    s += " H_" + std::to_string(row.at("k").get<int>()) + "=" + std::to_string(row.at("rank").get<std::size_t>());
  }
  return s.empty() ? " all zero" : s;
}

void emit(const Options& o, const Json& report, const std::string& summary) {
  const std::string text = report.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write " + o.out);
  f << text;
  std::cout << summary << "\n";
}

int cmd_verify(const std::string& suite, const Options& o) {
  VerifyConfig cfg{Ring::parse(o.ring), o.n, o.instances, o.seed, o.truncate, o.jobs};
  const auto& names = verify_suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) throw UsageError("unknown suite: " + suite);
  VerifyReport r = verify_suite(suite, cfg);
  emit(o, r.to_json(),
       suite + " n=" + std::to_string(r.n) + ": " + std::to_string(r.instances) + " instances, " +
           std::to_string(r.failures.size()) + " failures -> " + (r.pass() ? "PASS" : "FAIL"));
  return r.pass() ? 0 : 1;
}

Json gamma_report(const Functor& f, unsigned n, const EtaObject& x, unsigned big_n, Window w, bool& pass) {
  GammaResult g = gamma_n(f, n, x, big_n);
  GammaResult g1 = gamma_n(f, n, x, big_n + 1);
  const int valid_hi = std::min(w.hi, static_cast<int>(big_n) - 1);
  bool stable = true;
  for (int k = w.lo; k <= valid_hi; ++k) stable = stable && homology(g.gamma, k) == homology(g1.gamma, k);
  bool exact = is_valid(g.realization) && is_valid(g.epsilon_hat);
  pass = stable && exact;
  return {{"gamma", homology_table(g.gamma, w.lo, w.hi)},
          {"realization", homology_table(g.realization, w.lo, w.hi)},
          {"valid_window", {{"lo", w.lo}, {"hi", valid_hi}}},
          {"stable_under_truncation", stable},
          {"exact", exact}};
}

int cmd_compute(const std::string& what, const Options& o) {
  const Ring ring = Ring::parse(o.ring);
  const Window w = parse_window(o.window);
  Json rep{{"compute", what}, {"ring", ring.name()}, {"seed", o.seed}, {"window", window_json(w)}};
  if (what == "homology") {
    if (o.input.empty()) throw UsageError("compute homology needs --input FILE");
    Json j = read_json_file(o.input);
    // A cube file reports the homology of its iterated fiber.
    ChainComplex x = j.contains("vertices") ? ifiber_closed(cube_from_json(j)) : complex_from_json(j);
    rep["homology"] = homology_table(x, w.lo, w.hi);
    emit(o, rep, "homology:" + summary_line(rep["homology"]));
    return 0;
  }
  ContextPtr ctx = parse_context(o, ring);
  Functor f = make_functor(o.functor, ring);
  rep["functor"] = o.functor;
  if (what == "cr") {
    std::vector<EtaObject> xs = parse_objects(o.args.empty() ? "R" : o.args, ctx);
    rep["n"] = xs.size();
    rep["homology"] = homology_table(cr_n(f, xs), w.lo, w.hi);
    emit(o, rep, "cr_" + std::to_string(xs.size()) + " " + o.functor + ":" + summary_line(rep["homology"]));
    return 0;
  }
  if (what == "perp") {
    EtaObject x = parse_object(o.args.empty() ? "R" : o.args, ctx);
    rep["n"] = o.n;
    rep["homology"] = homology_table(perp_n(f, o.n, x), w.lo, w.hi);
    emit(o, rep, "perp_" + std::to_string(o.n) + " " + o.functor + ":" + summary_line(rep["homology"]));
    return 0;
  }
  if (what == "gamma-n") {
    EtaObject x = parse_object(o.args.empty() ? "R" : o.args, ctx);
    bool pass = false;
    rep["n"] = o.n;
    rep["truncation"] = o.truncate;
    rep.update(gamma_report(f, o.n, x, o.truncate, w, pass));
    emit(o, rep, "Gamma_" + std::to_string(o.n) + " " + o.functor + " N=" + std::to_string(o.truncate) + ":" +
                     summary_line(rep["gamma"]) + (pass ? "" : " (unstable or inexact)"));
    return pass ? 0 : 1;
  }
  if (what == "deloop") {
    DeloopReport d;
    if (o.m == 0) {
      std::vector<EtaObject> extra;
      if (!o.args.empty()) extra = parse_objects(o.args, ctx);
      d = deloop_degree1(f, ctx, extra, w);
    } else {
      d = deloop_excisive(f, parse_object(o.args.empty() ? "R" : o.args, ctx), o.m, w);
    }
    rep["check"] = d.check;
    rep["m"] = o.m;
    rep["precondition"] = d.precondition;
    rep["precondition_failures"] = d.precondition_failures;
    rep["lhs"] = betti_json(d.lhs);
    rep["rhs"] = betti_json(d.rhs);
    rep["pass"] = d.pass;
    std::string s = d.check + " " + o.functor + ": " + (d.pass ? "PASS" : "FAIL");
    for (const auto& e : d.precondition_failures) s += "\n  " + e;
    emit(o, rep, s);
    return d.pass ? 0 : 1;
  }
  throw UsageError("unknown compute target: " + what);
}

int cmd_tower(const Options& o) {
  const Ring ring = Ring::parse(o.ring);
  const Window w = parse_window(o.window);
  ContextPtr ctx = parse_context(o, ring);
  Functor f = make_functor(o.functor, ring);
  EtaObject x = parse_object(o.args.empty() ? "R" : o.args, ctx);
  SimplicialChainComplex s = bar_construction(f, o.n + 1, x, o.truncate);
  std::vector<std::string> violations = check_simplicial_identities(s);
  Json levels = Json::array();
  for (unsigned q = 0; q < s.levels.size(); ++q)
    levels.push_back({{"q", q}, {"total_rank", s.levels[q].total_rank()}, {"homology", homology_table(s.levels[q], w.lo, w.hi)}});
  bool pass = false;
  Json rep{{"command", "tower"},      {"functor", o.functor},      {"ring", ring.name()},
           {"n", o.n},                {"truncation", o.truncate},  {"seed", o.seed},
           {"window", window_json(w)}, {"levels", levels},          {"simplicial_violations", violations}};
  rep.update(gamma_report(f, o.n, x, o.truncate, w, pass));
  pass = pass && violations.empty();
  rep["pass"] = pass;
  emit(o, rep, "tower " + o.functor + " n=" + std::to_string(o.n) + " N=" + std::to_string(o.truncate) + ":" +
                   summary_line(rep["gamma"]) + " -> " + (pass ? "PASS" : "FAIL"));
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functor calculus toolkit"};
  app.require_subcommand(1);
  Options o;
  std::string suite, what;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--ring", o.ring, "q | z | fp:P");
    sub->add_option("--n", o.n, "cotriple or cube dimension");
    sub->add_option("--truncate", o.truncate, "bar construction truncation N");
    sub->add_option("--seed", o.seed, "random seed")->envname("FCK_SEED");
    sub->add_option("--jobs", o.jobs, "worker threads");
    sub->add_option("--window", o.window, "degree window A..B");
    sub->add_option("--out", o.out, "write the JSON report here");
  };
  auto objects = [&](CLI::App* sub) {
    sub->add_option("--functor", o.functor, "registry name, e.g. tensor:2");
    sub->add_option("--args", o.args, "comma-separated objects: A, B, 0, R, R^r[k], @file.json");
    sub->add_option("--B", o.b_spec, "B for the context A = 0 -> B");
    sub->add_option("--context", o.context_file, "JSON file holding {\"eta\": chain map A -> B}");
  };

  auto* verify = app.add_subcommand("verify", "run a randomized verification suite");
  verify->add_option("suite", suite, "hofib | ifiber | tfiber | xi-chainmap | counital | coassoc | sign-identity | simplicial | two-routes")
      ->required();
  verify->add_option("--instances", o.instances, "number of random instances");
  common(verify);

  auto* compute = app.add_subcommand("compute", "compute a homology report");
  compute->add_option("what", what, "cr | perp | gamma-n | homology | deloop")->required();
  compute->add_option("--input", o.input, "JSON complex or cube for compute homology");
  compute->add_option("--m", o.m, "suspension count for deloop (0: degree-one form)");
  common(compute);
  objects(compute);

  auto* tower = app.add_subcommand("tower", "bar construction, identities and Gamma_n");
  common(tower);
  objects(tower);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    if (verify->parsed()) return cmd_verify(suite, o);
    if (compute->parsed()) return cmd_compute(what, o);
    return cmd_tower(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
