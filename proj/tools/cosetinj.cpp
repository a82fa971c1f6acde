// Command-line front end for the coset-injectivity checkers.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "inj/crn.hpp"
#include "inj/error.hpp"
#include "inj/injectivity.hpp"
#include "inj/matrix_io.hpp"
#include "inj/oracle.hpp"
#include "inj/report.hpp"

namespace {

using namespace inj;

// Exit codes beyond the verdicts.
constexpr int kUsage = 64;
constexpr int kDataError = 65;
constexpr int kCapExceeded = 66;
constexpr int kUnsupported = 67;
constexpr int kInternal = 70;

int exit_code(Status s) {
  switch (s) {
    case Status::Injective: return 0;
    case Status::NotInjective: return 1;
    case Status::Inconclusive: return 2;
  }
  return kInternal;
}

// Prefixes ParseError messages with the file they came from.
template <typename F>
auto from_file(const std::string& path, F&& parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.column());
  }
}

Subspace parse_subspace(const std::string& text, Index ambient) {
  if (text == "full") {
    if (ambient < 0) throw Error("--S full needs the ambient dimension (--n)");
    return Subspace::full(ambient);
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error("--S must be `full`, `im:<file>` or `ker:<file>`");
  const std::string kind = text.substr(0, colon);
  const QMatrix m = from_file(text.substr(colon + 1), parse_matrix);
  if (kind == "im") return Subspace::image_of(m);
  if (kind == "ker") return Subspace::kernel_of(m);
  throw Error("--S must be `full`, `im:<file>` or `ker:<file>`");
}

struct Inputs {
  std::string b, w, d, a, s = "full", crn, mode = "MASS_ACTION", hint;
};

struct Globals {
  std::string report;
  std::string route = "auto";
  bool timings = false;
  Caps caps;
  std::size_t fallback_trials = 10'000;
  std::uint64_t seed = 0x5eed;
};

struct Built {
  Problem problem;
  std::vector<std::string> notes;
};

Built build(const std::string& which, const Inputs& in) {
  if (which == "crn") {
    const Network net = from_file(in.crn, parse_network);
    const KineticsMode mode = parse_kinetics_mode(in.mode);
    return {build_problem(net, mode),
            {"kinetics: " + to_string(mode),
             "analysis on the open positive orthant; boundary equilibria are not covered"}};
  }
  ClassPtr cls;
  if (which == "monomial") {
    cls = MatrixClass::scaled(from_file(in.b, parse_matrix));
    if (!in.w.empty()) {
      SignSetMatrix w = from_file(in.w, parse_sign_set_matrix);
      bool singleton = true;
      for (const auto& e : w.data()) singleton = singleton && e.is_singleton();
      cls = MatrixClass::product(singleton ? MatrixClass::sign_pattern(w) : MatrixClass::sign_sets(w), cls);
    }
  } else if (which == "monotonic") {
    cls = MatrixClass::sign_sets(from_file(in.w, parse_sign_set_matrix));
  } else if (which == "interval") {
    cls = MatrixClass::interval(from_file(in.d, parse_interval_matrix));
  } else {
    throw Error("unknown problem kind " + which);
  }
  std::optional<QMatrix> left;
  if (!in.a.empty()) left = from_file(in.a, parse_matrix);
  return {Problem{cls, parse_subspace(in.s, static_cast<Index>(cls->cols())), left, true}, {}};
}

void emit(const Json& j, const Globals& g) {
  const std::string text = render(j);
  if (g.report.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.report, std::ios::binary);
  if (!out) throw Error("cannot write report to " + g.report);
  out << text;
  std::cout << j["status"].get<std::string>() << '\n';
}

RoutePreference parse_route(const std::string& r) {
  if (r == "auto") return RoutePreference::Auto;
  if (r == "det") return RoutePreference::Determinant;
  if (r == "sign") return RoutePreference::Sign;
  if (r == "pattern") return RoutePreference::PatternUnion;
  throw Error("--route must be auto, det, sign or pattern");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact injectivity-on-cosets checker for classes of maps"};
  app.require_subcommand(1);
  Globals g;
  Inputs in;
  app.add_option("--report", g.report, "Write the JSON report here instead of stdout");
  app.add_option("--route", g.route, "auto | det | sign | pattern")->check(CLI::IsMember({"auto", "det", "sign", "pattern"}));
  app.add_flag("--timings", g.timings, "Include wall time in the report");
  app.add_option("--max-sign-dim", g.caps.max_sign_dim, "Cap on n for sign-vector enumeration");
  app.add_option("--max-vertices", g.caps.max_vertices, "Cap on interval-box vertices");
  app.add_option("--max-monomials", g.caps.max_monomials, "Cap on determinant expansion terms");
  app.add_option("--max-patterns", g.caps.max_patterns, "Cap on enumerated sign patterns");
  app.add_option("--fallback-trials", g.fallback_trials, "Falsifier trials before INCONCLUSIVE (0 disables)");
  app.add_option("--seed", g.seed, "Seed for the falsifier");

  auto add_s = [&](CLI::App* c) { c->add_option("--S", in.s, "full | im:<file> | ker:<file>"); };
  auto add_a = [&](CLI::App* c) { c->add_option("--A", in.a, "Fixed left matrix A (problem A∘G)")->check(CLI::ExistingFile); };

  auto* monomial = app.add_subcommand("monomial", "Generalized monomial maps: class q(B)");
  monomial->add_option("--B", in.b, "Exponent matrix B")->required()->check(CLI::ExistingFile);
  monomial->add_option("--W", in.w, "Compose with a W-monotonic outer map: class Q(W) q(B)")->check(CLI::ExistingFile);
  add_s(monomial);
  add_a(monomial);

  auto* monotonic = app.add_subcommand("monotonic", "Monotonic maps: class Q(W) for a sign-set matrix W");
  monotonic->add_option("--W", in.w, "Sign-set matrix")->required()->check(CLI::ExistingFile);
  add_s(monotonic);
  add_a(monotonic);

  auto* interval = app.add_subcommand("interval", "Interval-Jacobian maps: class Q(D)");
  interval->add_option("--D", in.d, "Interval matrix")->required()->check(CLI::ExistingFile);
  add_s(interval);
  add_a(interval);

  auto* crn = app.add_subcommand("crn", "Reaction network: A∘G on cosets of im(A)");
  crn->add_option("file", in.crn, "Network file")->required()->check(CLI::ExistingFile);
  crn->add_option("--mode", in.mode, "MASS_ACTION | POWER_LAW | MONOTONIC_STRICT | MONOTONIC_WEAK");

  Index n = -1;
  auto* signs = app.add_subcommand("signs", "List the sign vectors of S \\ {0}");
  signs->add_option("--S", in.s, "full | im:<file> | ker:<file>")->required();
  signs->add_option("--n", n, "Ambient dimension for --S full");

  std::string kind;
  std::size_t trials = 100'000;
  auto* falsify_cmd = app.add_subcommand("falsify", "Randomized search for a singular member");
  falsify_cmd->add_option("kind", kind, "monomial | monotonic | interval | crn")
      ->required()
      ->check(CLI::IsMember({"monomial", "monotonic", "interval", "crn"}));
  falsify_cmd->add_option("--B", in.b)->check(CLI::ExistingFile);
  falsify_cmd->add_option("--W", in.w)->check(CLI::ExistingFile);
  falsify_cmd->add_option("--D", in.d)->check(CLI::ExistingFile);
  falsify_cmd->add_option("--crn", in.crn)->check(CLI::ExistingFile);
  falsify_cmd->add_option("--mode", in.mode);
  falsify_cmd->add_option("--hint", in.hint, "Directed mode: file with a vector of S")->check(CLI::ExistingFile);
  falsify_cmd->add_option("--trials", trials, "Number of trials");
  add_s(falsify_cmd);
  add_a(falsify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (signs->parsed()) {
      const Subspace s = parse_subspace(in.s, n);
      for (const auto& v : subspace_sign_vectors(s, g.caps)) std::cout << v.str() << '\n';
      return 0;
    }
    if (falsify_cmd->parsed()) {
      const auto needed = kind == "monomial" ? in.b : kind == "monotonic" ? in.w : kind == "interval" ? in.d : in.crn;
      if (needed.empty()) throw CLI::RequiredError("the input file for " + kind);
      Built b = build(kind, in);
      OracleConfig cfg;
      cfg.trials = trials;
      cfg.seed = g.seed;
      if (!in.hint.empty()) cfg.hint = QVector(from_file(in.hint, parse_matrix).reshaped());
      FalsifyStats st;
      auto w = falsify(b.problem, cfg, &st);
      Verdict v;
      v.status = w ? Status::NotInjective : Status::Inconclusive;
      v.witness = std::move(w);
      v.diagnostics.candidates = st.trials_run;
      v.diagnostics.witness_source = v.witness ? "oracle" : "";
      v.diagnostics.note = "falsifier: " + std::to_string(st.trials_run) + " trials, " +
                           std::to_string(st.float_hits) + " floating-point hits, " +
                           std::to_string(st.exact_rejections) + " rejected exactly";
      emit(verdict_json(v, b.problem, ReportOptions{g.caps, false, b.notes}), g);
      return exit_code(v.status);
    }
    std::string which = monomial->parsed() ? "monomial" : monotonic->parsed() ? "monotonic" : interval->parsed() ? "interval" : "crn";
    Built b = build(which, in);
    CheckOptions opt;
    opt.caps = g.caps;
    opt.route = parse_route(g.route);
    opt.fallback_trials = g.fallback_trials;
    opt.fallback_seed = g.seed;
    const Verdict v = check_injectivity(b.problem, opt);
    emit(verdict_json(v, b.problem, ReportOptions{g.caps, g.timings, b.notes}), g);
    return exit_code(v.status);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kDataError;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const ShapeError& e) {
    std::cerr << "shape error: " << e.what() << '\n';
    return kDataError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
