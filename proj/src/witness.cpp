#include <cmath>

#include "inj/error.hpp"
#include "internal.hpp"

namespace inj {

namespace {

using Real = long double;

std::pair<std::vector<double>, std::vector<double>> lift_points(const QVector& v, const QVector& w) {
  const auto n = static_cast<std::size_t>(v.size());
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Index>(i);
    if (v(ii).is_zero()) {
      x[i] = y[i] = 1;
      continue;
    }
    const Real vi = static_cast<Real>(to_double(v(ii)));
    const Real wi = static_cast<Real>(to_double(w(ii)));
    // Both from expm1 so neither suffers cancellation.
    y[i] = static_cast<double>(wi / std::expm1(vi));
    x[i] = static_cast<double>(-wi / std::expm1(-vi));
  }
  return {std::move(x), std::move(y)};
}

// x^{b_i} for every row of b, via logarithms.
std::vector<Real> monomials(const QMatrix& b, const std::vector<double>& x) {
  std::vector<Real> out(static_cast<std::size_t>(b.rows()));
  for (Index i = 0; i < b.rows(); ++i) {
    Real s = 0;
    for (Index j = 0; j < b.cols(); ++j)
      if (!b(i, j).is_zero()) s += static_cast<Real>(to_double(b(i, j))) * std::log(static_cast<Real>(x[static_cast<std::size_t>(j)]));
    out[static_cast<std::size_t>(i)] = std::exp(s);
  }
  return out;
}

Real inf_norm(const std::vector<Real>& v) {
  Real m = 0;
  for (Real a : v) m = std::max(m, std::fabs(a));
  return m;
}

struct Residuals {
  double difference;
  double image;
};

Residuals residuals(const QMatrix& b, const QVector& w, const MonomialLift& lift, const std::optional<QMatrix>& left) {
  const auto n = static_cast<std::size_t>(w.size());
  std::vector<Real> diff(n), wr(n);
  for (std::size_t i = 0; i < n; ++i) {
    wr[i] = static_cast<Real>(to_double(w(static_cast<Index>(i))));
    diff[i] = (static_cast<Real>(lift.x[i]) - static_cast<Real>(lift.y[i])) - wr[i];
  }
  const Real wn = inf_norm(wr);
  const auto mx = monomials(b, lift.x);
  const auto my = monomials(b, lift.y);
  std::vector<Real> kx(mx.size()), kd(mx.size());
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const Real k = static_cast<Real>(lift.kappa[i]);
    kx[i] = k * mx[i];
    kd[i] = k * mx[i] - k * my[i];
  }
  Real scale = inf_norm(kx);
  std::vector<Real> img = kd;
  if (left) {
    Real a_norm = 0;
    img.assign(static_cast<std::size_t>(left->rows()), 0);
    for (Index i = 0; i < left->rows(); ++i) {
      Real row = 0;
      for (Index j = 0; j < left->cols(); ++j) {
        const Real a = static_cast<Real>(to_double((*left)(i, j)));
        img[static_cast<std::size_t>(i)] += a * kd[static_cast<std::size_t>(j)];
        row += std::fabs(a);
      }
      a_norm = std::max(a_norm, row);
    }
    scale *= a_norm;
  }
  return {static_cast<double>(wn > 0 ? inf_norm(diff) / wn : inf_norm(diff)),
          static_cast<double>(scale > 0 ? inf_norm(img) / scale : inf_norm(img))};
}

// Assignment where monomial m dominates every other term of the table.
Assignment dominating_point(const MonomialTable& t, std::size_t m, const std::vector<ParamDomain>& params) {
  Rational others = 0;
  for (std::size_t k = 0; k < t.terms.size(); ++k)
    if (k != m) others += abs(t.terms[k].second);
  Rational eps = 1;
  if (!others.is_zero()) eps = std::min(Rational(1), Rational(abs(t.terms[m].second) / (2 * others)));
  const Rational big = 1 / eps;
  Assignment a;
  for (const auto& pd : params) a[pd.param] = eps;
  for (const auto& [p, e] : t.terms[m].first) a[p] = big;
  return a;
}

Polynomial table_polynomial(const MonomialTable& t) {
  Polynomial out;
  for (const auto& [m, c] : t.terms) {
    Polynomial term(c);
    for (const auto& [p, e] : m)
      for (int k = 0; k < e; ++k) term = term * Polynomial::variable(p);
    out += term;
  }
  return out;
}

// A positive root of a multilinear table: walk from a positive point to a
// negative one coordinate by coordinate; det is affine along each step.
Assignment table_root(const MonomialTable& t, const std::vector<ParamDomain>& params) {
  std::size_t pos = t.terms.size(), neg = t.terms.size();
  for (std::size_t k = 0; k < t.terms.size(); ++k) {
    if (t.terms[k].second > 0 && pos == t.terms.size()) pos = k;
    if (t.terms[k].second < 0 && neg == t.terms.size()) neg = k;
  }
  if (pos == t.terms.size() || neg == t.terms.size()) throw Error("table_root: coefficients do not change sign");
  const Polynomial det = table_polynomial(t);
  Assignment cur = dominating_point(t, pos, params);
  const Assignment target = dominating_point(t, neg, params);
  Rational fcur = det.evaluate(cur);
  if (fcur <= 0 || det.evaluate(target) >= 0) throw Error("table_root: dominating points have wrong signs");
  for (const auto& pd : params) {
    Assignment next = cur;
    next[pd.param] = target.at(pd.param);
    const Rational fnext = det.evaluate(next);
    if (fnext > 0) {
      cur = std::move(next);
      fcur = fnext;
      continue;
    }
    const Rational t0 = cur.at(pd.param);
    const Rational t1 = next.at(pd.param);
    cur[pd.param] = t0 + fcur * (t1 - t0) / (fcur - fnext);
    if (!det.evaluate(cur).is_zero()) throw Error("table_root: determinant is not affine along a coordinate");
    return cur;
  }
  throw Error("table_root: no sign change along the walk");
}

SingularWitness witness_from_table(const Problem& p, const MonomialTable& t, DetSign sign) {
  const ClassPtr aug = augment_with_kernel_rep(p.subspace, p.effective_class());
  const SymbolicView view = symbolic_view(*aug);
  Assignment a;
  if (sign == DetSign::Zero) {
    for (const auto& pd : view.params) a[pd.param] = 1;
  } else if (sign == DetSign::Mixed) {
    if (!t.zero_attainable_if_mixed()) throw Error("build_witness: mixed table without the multilinear flag");
    a = table_root(t, view.params);
  } else {
    throw Error("build_witness: determinant has a strict sign");
  }
  Member m = realize(*aug, a);
  const QMatrix k = kernel_basis(m.value);
  if (k.cols() == 0) throw Error("build_witness: realized matrix is non-singular");
  return SingularWitness{std::move(m.factors.at(0)), k.col(0), std::nullopt};
}

SingularWitness witness_from_pair(const Problem& p, const SignPairEvidence& ev) {
  const auto d = detail::decompose(p);
  if (!d) throw Unsupported("build_witness: class shape has no sign route");
  const QMatrix& zrep = p.subspace.kernel_rep();
  if (const auto* iv = d->inner->as<IntervalClass>()) {
    for (const auto& box : detail::split_box(iv->box, Caps{}.max_patterns)) {
      auto sol = detail::interval_orthant(box, zrep, d->left, ev.tau);
      if (!sol) continue;
      Member inner{detail::realize_interval(box, sol->first, sol->second), {}, {}, {}};
      return SingularWitness{detail::wrap_member(*d, std::move(inner)), sol->first, std::nullopt};
    }
    throw Error("build_witness: orthant is infeasible for every box");
  }
  auto x = strict_sign_feasible(zrep, ev.tau);
  if (!x) throw Error("build_witness: tau is not a sign vector of S");
  const Index r = static_cast<Index>(d->inner->rows());
  QVector y = QVector::Zero(r);
  if (!ev.rho.is_zero()) {
    if (!d->left) throw Error("build_witness: nonzero rho without a left matrix");
    auto yy = strict_sign_feasible(*d->left, ev.rho);
    if (!yy) throw Error("build_witness: rho is not a sign vector of ker A");
    y = *yy;
  }
  Member inner;
  if (const auto* sc = d->inner->as<ScaledClass>()) {
    auto xp = pair_sign_feasible(sc->base, ev.tau, ev.rho);
    if (!xp) throw Error("build_witness: (tau, rho) is not sign-feasible for B");
    const QVector bx = sc->base * *xp;
    inner.row_scale = QVector::Ones(r);
    inner.col_scale = QVector::Ones(sc->base.cols());
    for (Index j = 0; j < x->size(); ++j)
      if (!(*x)(j).is_zero()) inner.col_scale(j) = (*xp)(j) / (*x)(j);
    for (Index i = 0; i < r; ++i)
      if (!y(i).is_zero()) inner.row_scale(i) = y(i) / bx(i);
    inner.value = inner.row_scale.asDiagonal() * sc->base * inner.col_scale.asDiagonal();
  } else {
    const SignSetMatrix& w = d->inner->as<SignSetsClass>() ? d->inner->as<SignSetsClass>()->sets
                                                           : d->inner->as<SignPatternClass>()->pattern;
    auto b = realize_concordant(w, *x, y);
    if (!b) throw Error("build_witness: (tau, rho) is not concordant");
    inner.value = std::move(*b);
  }
  return SingularWitness{detail::wrap_member(*d, std::move(inner)), std::move(*x), std::nullopt};
}

}  // namespace

namespace detail {

void attach_lift(const Problem& p, SingularWitness& w) {
  const auto d = decompose(p);
  if (!d) return;
  const auto* sc = d->inner->as<ScaledClass>();
  if (!sc) return;
  const Member& inner = d->left ? w.member.factors.at(0) : w.member;
  QVector v = inner.col_scale.cwiseProduct(w.z);
  // Any positive multiple of v works (kappa absorbs it); keep exponents small.
  Rational vmax = 0;
  for (Index i = 0; i < v.size(); ++i) vmax = std::max(vmax, Rational(abs(v(i))));
  if (vmax > 1) v /= vmax;
  const QVector bv = sc->base * v;
  MonomialLift lift;
  std::tie(lift.x, lift.y) = lift_points(v, w.z);
  const auto mx = monomials(sc->base, lift.x);
  const auto my = monomials(sc->base, lift.y);
  lift.kappa.assign(static_cast<std::size_t>(sc->base.rows()), 1.0);
  for (Index i = 0; i < bv.size(); ++i) {
    if (bv(i).is_zero()) continue;
    const auto ii = static_cast<std::size_t>(i);
    lift.kappa[ii] = static_cast<double>(static_cast<Real>(to_double(inner.row_scale(i) * bv(i))) / (mx[ii] - my[ii]));
  }
  const auto res = residuals(sc->base, w.z, lift, d->left);
  lift.difference_residual = res.difference;
  lift.image_residual = res.image;
  w.lift = std::move(lift);
}

}  // namespace detail

SingularWitness build_witness(const Problem& p, const WitnessEvidence& evidence) {
  SingularWitness w;
  if (const auto* da = std::get_if<DetAnalysis>(&evidence)) {
    if (const auto* t = std::get_if<MonomialTable>(&da->table)) {
      w = witness_from_table(p, *t, da->sign);
    } else {
      if (da->sign == DetSign::Positive || da->sign == DetSign::Negative)
        throw Error("build_witness: determinant has a strict sign");
      auto v = detail::sign_route(p, Caps{});
      if (!v || v->status != Status::NotInjective) throw Error("build_witness: vertex evidence not confirmed by the interval search");
      return std::move(*v->witness);
    }
  } else {
    w = witness_from_pair(p, std::get<SignPairEvidence>(evidence));
  }
  detail::attach_lift(p, w);
  if (!verify_witness(w, p)) throw Error("build_witness: constructed witness failed verification");
  return w;
}

MonomialLift lift_monomial_witness(const QMatrix& b, const QVector& v, const QVector& w) {
  if (v.size() != b.cols() || w.size() != b.cols()) throw ShapeError("lift_monomial_witness: size mismatch");
  if (!is_zero(QVector(b * v))) throw Error("lift_monomial_witness: v is not in ker B");
  if (sigma(v) != sigma(w)) throw Error("lift_monomial_witness: sign vectors of v and w differ");
  if (is_zero(v)) throw Error("lift_monomial_witness: v is zero");
  MonomialLift lift;
  std::tie(lift.x, lift.y) = lift_points(v, w);
  lift.kappa.assign(static_cast<std::size_t>(b.rows()), 1.0);
  const auto res = residuals(b, w, lift, std::nullopt);
  lift.difference_residual = res.difference;
  lift.image_residual = res.image;
  return lift;
}

bool verify_lift(const QMatrix& b, const QVector& w, const MonomialLift& lift, double tol,
                 const std::optional<QMatrix>& left) {
  const auto n = static_cast<std::size_t>(b.cols());
  if (lift.x.size() != n || lift.y.size() != n || lift.kappa.size() != static_cast<std::size_t>(b.rows()) ||
      w.size() != b.cols())
    return false;
  for (std::size_t i = 0; i < n; ++i)
    if (!(lift.x[i] > 0) || !(lift.y[i] > 0)) return false;
  for (double k : lift.kappa)
    if (!(k > 0)) return false;
  const auto res = residuals(b, w, lift, left);
  return res.difference <= tol && res.image <= tol;
}

bool verify_witness(const SingularWitness& w, const Problem& p) {
  const ClassPtr eff = p.effective_class();
  if (w.z.size() != p.subspace.ambient_dim() || is_zero(w.z)) return false;
  if (!p.subspace.contains(w.z)) return false;
  if (!is_member(*eff, w.member)) return false;
  if (!is_zero(QVector(w.member.value * w.z))) return false;
  if (w.lift) {
    const auto d = detail::decompose(p);
    if (!d || !d->inner->as<ScaledClass>()) return false;
    if (!verify_lift(d->inner->as<ScaledClass>()->base, w.z, *w.lift, 1e-9, d->left)) return false;
  }
  return true;
}

}  // namespace inj
