// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "inj/feasibility.hpp"
#include "inj/oracle.hpp"
#include "inj/report.hpp"
#include "support.hpp"

using namespace inj;
using namespace testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Every verdict produced below, for criterion 9.
struct Record {
  Problem problem;
  Verdict verdict;
};
std::vector<Record> g_records;

Verdict run(const Problem& p, RoutePreference route = RoutePreference::Auto) {
  CheckOptions opt;
  opt.route = route;
  Verdict v = check_injectivity(p, opt);
  g_records.push_back({p, v});
  return v;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::set<std::string> table_terms(const Verdict& v) {
  std::set<std::string> out;
  if (!v.certificate) return out;
  const auto* d = std::get_if<DetAnalysis>(&*v.certificate);
  if (!d) return out;
  if (const auto* t = std::get_if<MonomialTable>(&d->table))
    for (const auto& [m, c] : t->terms) out.insert(to_string(c) + "*" + to_string(m));
  return out;
}

const VertexTable* vertex_table(const Verdict& v) {
  if (!v.certificate) return nullptr;
  const auto* d = std::get_if<DetAnalysis>(&*v.certificate);
  return d ? std::get_if<VertexTable>(&d->table) : nullptr;
}

DetSign det_sign(const Verdict& v) {
  const auto* d = v.certificate ? std::get_if<DetAnalysis>(&*v.certificate) : nullptr;
  return d ? d->sign : DetSign::Zero;
}

// ---- worked examples ------------------------------------------------------

Outcome scaled_and_open_box() {
  Outcome o;
  auto scaled = run(problem(MatrixClass::scaled(b22()), Subspace::full(2)));
  o.require(scaled.status == Status::Injective, "scaled class not injective");
  o.require(table_terms(scaled) == std::set<std::string>{"-1*kappa1*kappa2*lambda1*lambda2"}, "table differs");
  Problem full = problem(open_box(), Subspace::full(2));
  auto a = run(full);
  o.require(a.status == Status::NotInjective && a.witness && verify_witness(*a.witness, full),
            "interval class on R^2 lacks a verified witness");
  o.require(run(problem(open_box(), im11())).status == Status::Injective, "interval class on im(1,1) not injective");
  return o;
}

Outcome lower_triangular() {
  Outcome o;
  o.require(run(problem(lowtri_box(), Subspace::full(2))).status == Status::Injective, "interval class");
  o.require(run(problem(lowtri_w(), Subspace::full(2))).status == Status::Injective, "sign-set class");
  return o;
}

Outcome narrow_box_case() {
  Outcome o;
  auto v = run(problem(narrow_box(), Subspace::full(2)));
  o.require(v.status == Status::Injective, "not injective");
  o.require(det_sign(v) == DetSign::Negative, "determinant not NEG");
  const auto* t = vertex_table(v);
  o.require(t && t->max == Rational(-427, 1000), "vertex max differs from -427/1000");
  return o;
}

Outcome left_product_open_corner() {
  Outcome o;
  auto prod = symbolic_product(a24(), box42());
  Polynomial k1 = Polynomial::variable({ParamKind::IntervalAtom, 1});
  Polynomial k2 = Polynomial::variable({ParamKind::IntervalAtom, 2});
  o.require(prod.rows() == 2 && prod.cols() == 2, "product shape");
  o.require(prod(0, 0) == Polynomial(Rational(-1)) && prod(1, 1) == Polynomial(Rational(-1)), "diagonal");
  o.require(prod(0, 1) == k2 && prod(1, 0) == k1, "off-diagonal");
  auto v = run(problem(box42(), Subspace::full(2), a24()));
  o.require(v.status == Status::Injective, "not injective");
  const auto* t = vertex_table(v);
  o.require(t != nullptr, "no vertex table");
  if (t) {
    bool zero_excluded = false;
    for (const auto& r : t->vertices) {
      if (r.value == 0) zero_excluded = r.excluded && r.at_upper == std::vector<bool>{true, true};
    }
    o.require(zero_excluded, "zero vertex at (1,1) not marked excluded");
  }
  return o;
}

Outcome left_difference() {
  Outcome o;
  Problem full = problem(diag_box(), Subspace::full(2), a12());
  auto a = run(full);
  o.require(a.status == Status::NotInjective && a.witness && verify_witness(*a.witness, full), "R^2 case");
  o.require(run(problem(diag_box(), im11(), a12())).status == Status::Injective, "im(1,1) case");
  return o;
}

Outcome pattern_product() {
  Outcome o;
  auto v = run(problem(w_times_qb(), plane_s()));
  o.require(v.status == Status::Injective && det_sign(v) == DetSign::Positive, "product not POS");
  o.require(table_terms(v) == std::set<std::string>{"1*lambda1*lambda3*mu1*mu4", "1*lambda1*lambda3*mu2*mu3",
                                                    "1*lambda2*lambda3*mu1*mu4", "1*lambda2*lambda3*mu2*mu3"},
            "monomial set differs");
  // lambda3 (lambda1 + lambda2)(mu1 mu4 + mu2 mu3) at a few points.
  auto aug = augment_with_kernel_rep(plane_s(), w_times_qb());
  Polynomial det = symbolic_determinant(symbolic_view(*aug).entries, 1000);
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<int> d(1, 9);
  for (int t = 0; t < 20; ++t) {
    Assignment a;
    Rational l[4], m[5];
    for (int i = 1; i <= 3; ++i) a[{ParamKind::ColScale, i}] = l[i] = Rational(d(rng), d(rng));
    for (int i = 1; i <= 4; ++i) a[{ParamKind::SignAtom, i}] = m[i] = Rational(d(rng), d(rng));
    o.require(det.evaluate(a) == l[3] * (l[1] + l[2]) * (m[1] * m[4] + m[2] * m[3]), "factored form differs");
  }
  Problem wh = problem(w_h(), plane_s());
  auto n = run(wh);
  o.require(n.status == Status::NotInjective && n.witness && verify_witness(*n.witness, wh), "W_H case");
  return o;
}

// ---- random instances -------------------------------------------------------

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen); }
  QMatrix matrix(Index r, Index c, int lo, int hi) {
    QMatrix m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }
};

Subspace random_subspace(Rng& rng, Index n, Index s) {
  if (s == n) return Subspace::full(n);
  for (;;) {
    QMatrix v = rng.matrix(n, s, -3, 3);
    if (rank(v) == s) return Subspace::image_of(v);
  }
}

IntervalEntry random_bounded_entry(Rng& rng) {
  int a = rng.uniform(-3, 3);
  if (rng.coin()) return IntervalEntry::point(a);
  int b = rng.uniform(-3, 3);
  if (a == b) return IntervalEntry::point(a);
  if (a > b) std::swap(a, b);
  return IntervalEntry::make(Rational(a), rng.coin(), Rational(b), rng.coin());
}

// Square instance: rows of the effective class equal dim S.
Problem random_square(Rng& rng, int kind) {
  const Index n = rng.uniform(1, 4);
  const Index s = rng.uniform(1, static_cast<int>(n));
  Subspace sub = random_subspace(rng, n, s);
  switch (kind) {
    case 0:
      return problem(MatrixClass::scaled(rng.matrix(s, n, -3, 3)), sub);
    case 1: {
      SignSetMatrix w(static_cast<std::size_t>(s), static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j) w(i, j) = SignSet::of(static_cast<Sign>(rng.uniform(-1, 1)));
      return problem(MatrixClass::sign_pattern(w), sub);
    }
    case 2: {
      // Bounded entries only: the vertex table needs a bounded box.
      IntervalBox d(static_cast<std::size_t>(s), static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j) d(i, j) = random_bounded_entry(rng);
      return problem(MatrixClass::interval(d), sub);
    }
    default: {
      const Index r = rng.uniform(static_cast<int>(s), 4);
      return problem(MatrixClass::scaled(rng.matrix(r, n, -3, 3)), sub, rng.matrix(s, r, -3, 3));
    }
  }
}

Outcome route_agreement() {
  Outcome o;
  Rng rng(20261016);
  std::map<std::string, int> counts;
  for (int t = 0; t < 500; ++t) {
    Problem p = random_square(rng, t % 4);
    Verdict det, sign;
    try {
      det = run(p, RoutePreference::Determinant);
      sign = run(p, RoutePreference::Sign);
    } catch (const std::exception& e) {
      o.require(false, "instance " + std::to_string(t) + " threw '" + e.what() + "': " + problem_json(p).dump());
      continue;
    }
    counts[to_string(det.status) + "/" + to_string(det.method)]++;
    if (det.status != sign.status) {
      o.require(false, "instance " + std::to_string(t) + ": det " + to_string(det.status) + " vs sign " +
                           to_string(sign.status) + " for " + p.cls->describe());
    }
  }
  std::string mix;
  for (const auto& [k, c] : counts) mix += (mix.empty() ? "" : ", ") + k + "=" + std::to_string(c);
  if (o.pass) o.detail = mix;
  return o;
}

Outcome pattern_union_suite() {
  Outcome o;
  auto sets = all_sign_sets();
  int injective = 0, total = 0;
  for (const auto& a : sets)
    for (const auto& b : sets)
      for (const auto& c : sets)
        for (const auto& d : sets) {
          SignSetMatrix w(2, 2);
          w(0, 0) = a, w(0, 1) = b, w(1, 0) = c, w(1, 1) = d;
          Problem p = problem(MatrixClass::sign_sets(w), Subspace::full(2));
          Verdict v = run(p);
          bool conj = true;
          for (const auto& pat : enumerate_patterns(w)) {
            // Each pattern is decided by its own determinant expansion, independently of the union.
            Polynomial det = symbolic_determinant(symbolic_view(*MatrixClass::sign_pattern(pat)).entries, 100);
            bool pos = false, neg = false;
            for (const auto& [m, coef] : det.terms()) (coef > 0 ? pos : neg) = true;
            conj = conj && (pos != neg);
          }
          ++total;
          injective += conj;
          o.require(v.status == (conj ? Status::Injective : Status::NotInjective),
                    "pattern union disagrees on " + format_sign_set_matrix(w));
          o.require(run(p, RoutePreference::Sign).status == v.status,
                    "sign route disagrees on " + format_sign_set_matrix(w));
        }
  if (o.pass) o.detail = std::to_string(total) + " classes, " + std::to_string(injective) + " injective";
  return o;
}

std::string problem_key(const Problem& p) { return problem_json(p).dump(); }

Outcome soundness(std::size_t falsifier_trials) {
  Outcome o;
  std::set<std::string> seen;
  std::size_t not_checked = 0, inj_checked = 0, inconclusive = 0;
  for (const auto& r : g_records) {
    if (r.verdict.status == Status::NotInjective) {
      ++not_checked;
      o.require(verify_certificate(r.verdict, r.problem), "certificate rejected for " + r.problem.cls->describe());
    } else if (r.verdict.status == Status::Injective) {
      o.require(verify_certificate(r.verdict, r.problem),
                "positivity certificate rejected for " + r.problem.cls->describe());
      if (!seen.insert(problem_key(r.problem)).second) continue;
      ++inj_checked;
      OracleConfig cfg;
      cfg.trials = falsifier_trials;
      cfg.seed = 0x5eed;
      auto hit = falsify(r.problem, cfg);
      o.require(!hit, "falsifier hit on an INJECTIVE verdict: " + problem_key(r.problem));
    } else {
      ++inconclusive;
    }
  }
  o.require(inconclusive == 0, std::to_string(inconclusive) + " inconclusive verdicts");
  if (o.pass)
    o.detail = std::to_string(not_checked) + " witnesses verified, " + std::to_string(inj_checked) +
               " distinct injective problems falsified with " + std::to_string(falsifier_trials) + " trials each";
  return o;
}

Outcome sign_orthogonality() {
  Outcome o;
  Rng rng(10);
  int checks = 0;
  for (int t = 0; t < 200; ++t) {
    const Index n = rng.uniform(1, 4);
    QVector v = rng.matrix(n, 1, -3, 3).col(0);
    QMatrix e = v.transpose();
    for (const auto& tau : all_sign_vectors(static_cast<std::size_t>(n))) {
      auto u = strict_sign_feasible(e, tau);
      bool exact = u.has_value();
      if (u) o.require(sigma(*u) == tau && (e * *u).isZero(), "solver returned a bad point");
      o.require(sign_orthogonal(tau, sigma(v)) == exact, "disagreement at tau=" + tau.str() + " v-sign=" +
                                                              sigma(v).str());
      ++checks;
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " pairs";
  return o;
}

Outcome monomial_lift() {
  Outcome o;
  Rng rng(11);
  double worst_diff = 0, worst_image = 0;
  int made = 0;
  while (made < 200) {
    const Index n = rng.uniform(2, 5);
    const Index r = rng.uniform(1, static_cast<int>(n) - 1);
    QMatrix b = rng.matrix(r, n, -3, 3);
    QMatrix k = kernel_basis(b);
    if (k.cols() == 0) continue;
    QVector v = QVector::Zero(n);
    for (Index c = 0; c < k.cols(); ++c) v += Rational(rng.uniform(-2, 2)) * k.col(c);
    if (is_zero(v)) continue;
    // Keep exponents moderate so exp() stays well inside double range.
    Rational vmax = 0;
    for (Index i = 0; i < n; ++i) vmax = std::max(vmax, Rational(abs(v(i))));
    if (vmax > 8) v *= Rational(8) / vmax;
    QVector w(n);
    for (Index i = 0; i < n; ++i) w(i) = Rational(sign(v(i)) * rng.uniform(1, 50), rng.uniform(1, 10));
    MonomialLift lift = lift_monomial_witness(b, v, w);
    ++made;
    double wmax = 0, dmax = 0, xbmax = 0, imax = 0;
    for (Index i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      o.require(lift.x[ui] > 0 && lift.y[ui] > 0, "non-positive lift");
      wmax = std::max(wmax, std::abs(to_double(w(i))));
      dmax = std::max(dmax, std::abs((lift.x[ui] - lift.y[ui]) - to_double(w(i))));
    }
    for (Index j = 0; j < r; ++j) {
      long double lx = 0, ly = 0;
      for (Index i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const long double e = to_double(b(j, i));
        lx += e * std::log(static_cast<long double>(lift.x[ui]));
        ly += e * std::log(static_cast<long double>(lift.y[ui]));
      }
      const double xb = static_cast<double>(std::exp(lx)), yb = static_cast<double>(std::exp(ly));
      xbmax = std::max(xbmax, std::abs(xb));
      imax = std::max(imax, std::abs(xb - yb));
    }
    worst_diff = std::max(worst_diff, dmax / wmax);
    worst_image = std::max(worst_image, imax / xbmax);
    o.require(dmax <= 1e-9 * wmax, "difference residual too large");
    o.require(imax <= 1e-9 * xbmax, "image residual too large");
  }
  if (o.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst residuals %.2e / %.2e", worst_diff, worst_image);
    o.detail = buf;
  }
  return o;
}

// Row i of B x = y is solvable with B_ij in W_ij iff an LP over the row entries is feasible,
// taking x = tau (magnitudes absorb into B) and |y_i| >= 1 (the system is a cone).
bool row_solvable(const SignSetMatrix& w, std::size_t i, const SignVector& tau, Sign rho_i) {
  const std::size_t n = w.cols();
  std::vector<std::vector<Sign>> choices(n);
  for (std::size_t j = 0; j < n; ++j) {
    // A set containing both signs but not 0 splits into two closed half-lines.
    const SignSet s = w(i, j);
    if (s.contains(Sign::Minus) && s.contains(Sign::Plus) && !s.contains(Sign::Zero))
      choices[j] = {Sign::Minus, Sign::Plus};
    else
      choices[j] = {Sign::Zero};  // placeholder: handled by bounds below
  }
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    LinearSystem sys(static_cast<Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
      const SignSet s = w(i, j);
      QVector e = QVector::Zero(static_cast<Index>(n));
      e(static_cast<Index>(j)) = 1;
      const bool split = choices[j].size() == 2;
      const bool m = split ? choices[j][idx[j]] == Sign::Minus : s.contains(Sign::Minus);
      const bool z = !split && s.contains(Sign::Zero);
      const bool p = split ? choices[j][idx[j]] == Sign::Plus : s.contains(Sign::Plus);
      if (!m && !p) {
        sys.add(e, Relation::Equal, 0);
      } else if (!m) {
        sys.add(e, Relation::AtLeast, z ? 0 : 1);
      } else if (!p) {
        sys.add(e, Relation::AtMost, z ? 0 : -1);
      }
    }
    QVector row(static_cast<Index>(n));
    for (std::size_t j = 0; j < n; ++j) row(static_cast<Index>(j)) = static_cast<int>(tau[j]);
    if (rho_i == Sign::Zero) sys.add(row, Relation::Equal, 0);
    if (rho_i == Sign::Plus) sys.add(row, Relation::AtLeast, 1);
    if (rho_i == Sign::Minus) sys.add(row, Relation::AtMost, -1);
    if (sys.solve()) return true;
    std::size_t k = 0;
    while (k < n && ++idx[k] == choices[k].size()) idx[k++] = 0;
    if (k == n) return false;
  }
}

Outcome concordance() {
  Outcome o;
  Rng rng(12);
  const auto sets = all_sign_sets();
  std::size_t pairs = 0, concordant = 0;
  for (std::size_t r = 1; r <= 3; ++r)
    for (std::size_t n = 1; n <= 3; ++n)
      for (int t = 0; t < 25; ++t) {
        SignSetMatrix w(r, n);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < n; ++j) w(i, j) = sets[static_cast<std::size_t>(rng.uniform(0, 6))];
        for (const auto& tau : all_sign_vectors(n)) {
          // Per-row solvability for each sign of y_i.
          std::vector<std::array<bool, 3>> rows(r);
          for (std::size_t i = 0; i < r; ++i)
            for (int s = -1; s <= 1; ++s) rows[i][static_cast<std::size_t>(s + 1)] = row_solvable(w, i, tau, static_cast<Sign>(s));
          for (const auto& rho : all_sign_vectors(r)) {
            bool exists = true;
            for (std::size_t i = 0; i < r; ++i) exists = exists && rows[i][static_cast<std::size_t>(static_cast<int>(rho[i]) + 1)];
            const bool test = concordant_pair(rho, tau, w);
            ++pairs;
            concordant += test;
            o.require(test == exists, "rho=" + rho.str() + " tau=" + tau.str() + " W=" + format_sign_set_matrix(w));
            if (test) {
              QVector x(static_cast<Index>(n)), y(static_cast<Index>(r));
              for (std::size_t j = 0; j < n; ++j) x(static_cast<Index>(j)) = Rational(static_cast<int>(tau[j]) * rng.uniform(1, 5), rng.uniform(1, 3));
              for (std::size_t i = 0; i < r; ++i) y(static_cast<Index>(i)) = Rational(static_cast<int>(rho[i]) * rng.uniform(1, 5), rng.uniform(1, 3));
              auto b = realize_concordant(w, x, y);
              bool ok = b.has_value() && QVector(*b * x) == y;
              if (ok)
                for (std::size_t i = 0; i < r; ++i)
                  for (std::size_t j = 0; j < n; ++j) ok = ok && w(i, j).contains(sign_of((*b)(static_cast<Index>(i), static_cast<Index>(j))));
              o.require(ok, "construction failed for rho=" + rho.str() + " tau=" + tau.str());
            }
          }
        }
      }
  if (o.pass) o.detail = std::to_string(pairs) + " pairs, " + std::to_string(concordant) + " concordant";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "scaled 2x2 class and open-orthant box", 1, scaled_and_open_box},
      {2, "lower-triangular box and sign-set class", 1, lower_triangular},
      {3, "narrow box with exact vertex maximum", 1, narrow_box_case},
      {4, "left product with an excluded zero vertex", 1, left_product_open_corner},
      {5, "left difference map on two subspaces", 1, left_difference},
      {6, "sign pattern times scaled class, and W_H", 1, pattern_product},
      {7, "route agreement on 500 random square instances", 60, route_agreement},
      {8, "pattern union over all 2x2 sign-set classes", 60, pattern_union_suite},
      {9, "certificate soundness", 60, [] { return soundness(100000); }},
      {10, "sign-orthogonality realizability", 60, sign_orthogonality},
      {11, "monomial lift residuals", 60, monomial_lift},
      {12, "concordance equivalence", 60, concordance},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = seconds_since(t0);
    if (o.pass && secs >= c.limit_seconds) {
      o.pass = false;
      o.detail = "took longer than the limit";
    }
    failures += !o.pass;
    std::printf("[%s] %2d %s (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
