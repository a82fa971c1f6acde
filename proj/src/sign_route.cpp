#include <functional>

#include "inj/error.hpp"
#include "internal.hpp"

namespace inj {

namespace detail {

std::optional<Decomposed> decompose(const Problem& p) {
  auto is_inner = [](const MatrixClass& c) {
    return c.as<SignPatternClass>() || c.as<SignSetsClass>() || c.as<IntervalClass>() || c.as<ScaledClass>();
  };
  if (is_inner(*p.cls)) return Decomposed{p.left, p.cls};
  if (p.left) return std::nullopt;
  if (const auto* prod = p.cls->as<ProductClass>()) {
    const auto* a = std::get_if<QMatrix>(&prod->left);
    if (a && is_inner(*prod->right)) return Decomposed{*a, prod->right};
  }
  return std::nullopt;
}

Member wrap_member(const Decomposed& d, Member inner) {
  if (!d.left) return inner;
  Member out;
  out.value = *d.left * inner.value;
  out.factors.push_back(std::move(inner));
  return out;
}

std::vector<std::pair<SignVector, QVector>> subspace_sign_realizations(const Subspace& s, const Caps& caps) {
  const auto n = static_cast<std::size_t>(s.ambient_dim());
  if (n > caps.max_sign_dim) throw CapExceeded("subspace sign enumeration (ambient dimension)", n, caps.max_sign_dim);
  std::vector<std::pair<SignVector, QVector>> out;
  if (s.dim() == 0) return out;
  const QMatrix& z = s.kernel_rep();

  // Depth-first over coordinates; a prefix survives if some x in S matches it.
  std::vector<Sign> prefix;
  std::function<void()> walk = [&] {
    for (Sign sg : {Sign::Minus, Sign::Zero, Sign::Plus}) {
      prefix.push_back(sg);
      LinearSystem ls(static_cast<Index>(n));
      for (Index i = 0; i < z.rows(); ++i) ls.add(z.row(i).transpose(), Relation::Equal, 0);
      for (std::size_t j = 0; j < prefix.size(); ++j) {
        const auto jj = static_cast<Index>(j);
        QVector e = QVector::Zero(static_cast<Index>(n));
        e(jj) = 1;
        if (prefix[j] == Sign::Zero) {
          ls.restrict_sign(jj, VarSign::Zero);
        } else if (prefix[j] == Sign::Plus) {
          ls.restrict_sign(jj, VarSign::NonNegative);
          ls.add(e, Relation::AtLeast, 1);
        } else {
          ls.restrict_sign(jj, VarSign::NonPositive);
          ls.add(e, Relation::AtMost, -1);
        }
      }
      if (auto x = ls.solve()) {
        if (prefix.size() == n) {
          SignVector tau(prefix);
          if (!tau.is_zero()) out.emplace_back(std::move(tau), std::move(*x));
        } else {
          walk();
        }
      }
      prefix.pop_back();
    }
  };
  if (z.rows() == 0) {
    for (auto& tau : all_sign_vectors(n)) {
      if (tau.is_zero()) continue;
      QVector x(static_cast<Index>(n));
      for (std::size_t j = 0; j < n; ++j) x(static_cast<Index>(j)) = static_cast<int>(tau[j]);
      out.emplace_back(std::move(tau), std::move(x));
    }
    return out;
  }
  walk();
  return out;
}

std::vector<IntervalBox> split_box(const IntervalBox& box, std::size_t cap) {
  std::vector<IntervalBox> out{box};
  for (std::size_t i = 0; i < box.rows(); ++i)
    for (std::size_t j = 0; j < box.cols(); ++j) {
      if (!box(i, j).punctured()) continue;
      const auto [lo, hi] = box(i, j).split_punctured();
      if (out.size() * 2 > cap) throw CapExceeded("punctured interval split", out.size() * 2, cap);
      std::vector<IntervalBox> next;
      next.reserve(out.size() * 2);
      for (auto& b : out) {
        IntervalBox a = b;
        a(i, j) = lo;
        b(i, j) = *hi;
        next.push_back(std::move(a));
        next.push_back(std::move(b));
      }
      out = std::move(next);
    }
  return out;
}

std::optional<std::pair<QVector, QVector>> interval_orthant(const IntervalBox& box, const QMatrix& z,
                                                            const std::optional<QMatrix>& left, const SignVector& tau) {
  const auto n = static_cast<Index>(box.cols());
  const auto r = static_cast<Index>(box.rows());
  const Index nv = n + (left ? r : 0);
  LinearSystem ls(nv);
  for (Index j = 0; j < n; ++j) {
    QVector e = QVector::Zero(nv);
    e(j) = 1;
    switch (tau[static_cast<std::size_t>(j)]) {
      case Sign::Zero: ls.restrict_sign(j, VarSign::Zero); break;
      case Sign::Plus:
        ls.restrict_sign(j, VarSign::NonNegative);
        ls.add(e, Relation::AtLeast, 1);
        break;
      case Sign::Minus:
        ls.restrict_sign(j, VarSign::NonPositive);
        ls.add(e, Relation::AtMost, -1);
        break;
    }
  }
  for (Index i = 0; i < z.rows(); ++i) {
    QVector c = QVector::Zero(nv);
    c.head(n) = z.row(i).transpose();
    ls.add(c, Relation::Equal, 0);
  }
  if (left) {
    for (Index i = 0; i < left->rows(); ++i) {
      QVector c = QVector::Zero(nv);
      c.tail(r) = left->row(i).transpose();
      ls.add(c, Relation::Equal, 0);
    }
  }
  // Row i: target_i ranges over the open/closed interval spanned by the
  // extreme endpoints; an infinite endpoint drops that side.
  for (Index i = 0; i < r; ++i) {
    for (int side = 0; side < 2; ++side) {
      const bool lower_side = side == 0;
      QVector c = QVector::Zero(nv);
      bool finite = true;
      bool open = false;
      for (Index j = 0; j < n && finite; ++j) {
        const Sign t = tau[static_cast<std::size_t>(j)];
        if (t == Sign::Zero) continue;
        const auto& e = box(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        const bool use_lower = (t == Sign::Plus) == lower_side;
        const auto& end = use_lower ? e.lower() : e.upper();
        if (!end) {
          finite = false;
          break;
        }
        open = open || (use_lower ? e.lower_open() : e.upper_open());
        c(j) = lower_side ? Rational(-*end) : *end;
      }
      if (!finite) continue;
      if (left) c(n + i) = lower_side ? 1 : -1;
      ls.add(c, Relation::AtLeast, open ? 1 : 0);
    }
  }
  auto sol = ls.solve();
  if (!sol) return std::nullopt;
  QVector x = sol->head(n);
  QVector y = left ? QVector(sol->tail(r)) : QVector(QVector::Zero(r));
  return std::make_pair(std::move(x), std::move(y));
}

QMatrix realize_interval(const IntervalBox& box, const QVector& x, const QVector& y) {
  const auto n = static_cast<Index>(box.cols());
  const auto r = static_cast<Index>(box.rows());
  QMatrix b(r, n);
  for (Index i = 0; i < r; ++i) {
    auto entry = [&](Index j) -> const IntervalEntry& { return box(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };
    for (Index j = 0; j < n; ++j) b(i, j) = entry(j).interior_point();
    const Rational delta = y(i) - b.row(i).dot(x);
    if (delta.is_zero()) continue;
    const bool up = delta > 0;
    // Move each entry toward the endpoint that pushes the row value toward y_i.
    std::vector<std::optional<Rational>> target(static_cast<std::size_t>(n));
    Rational total = 0;
    bool done = false;
    for (Index j = 0; j < n && !done; ++j) {
      if (x(j).is_zero()) continue;
      const bool use_upper = (x(j) > 0) == up;
      const auto& end = use_upper ? entry(j).upper() : entry(j).lower();
      if (!end) {
        b(i, j) += delta / x(j);
        done = true;
        break;
      }
      target[static_cast<std::size_t>(j)] = *end;
      total += (*end - b(i, j)) * x(j);
    }
    if (done) continue;
    if (total.is_zero() || abs(delta) > abs(total)) throw Error("interval row realization: target out of range");
    const Rational frac = delta / total;
    for (Index j = 0; j < n; ++j)
      if (const auto& t = target[static_cast<std::size_t>(j)]) b(i, j) += frac * (*t - b(i, j));
  }
  return b;
}

namespace {

std::vector<std::pair<SignVector, QVector>> target_realizations(const Decomposed& d, const Caps& caps) {
  const Index r = static_cast<Index>(d.inner->rows());
  std::vector<std::pair<SignVector, QVector>> out;
  out.emplace_back(SignVector(static_cast<std::size_t>(r)), QVector::Zero(r));
  if (d.left) {
    auto more = subspace_sign_realizations(Subspace::kernel_of(*d.left), caps);
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  }
  return out;
}

}  // namespace

std::optional<Verdict> sign_route(const Problem& p, const Caps& caps) {
  auto d = decompose(p);
  if (!d) return std::nullopt;
  Verdict v;
  v.method = Method::SignRoute;
  SignSearchTranscript tr;
  const auto subs = subspace_sign_realizations(p.subspace, caps);
  for (const auto& [tau, x] : subs) tr.subspace_signs.push_back(tau);

  auto found = [&](const SignVector& tau, const SignVector& rho) {
    v.status = Status::NotInjective;
    v.witness = build_witness(p, SignPairEvidence{tau, rho});
    v.diagnostics.witness_source = "sign-route";
    v.diagnostics.candidates = tr.checks;
    v.certificate.reset();
    return v;
  };

  if (const auto* iv = d->inner->as<IntervalClass>()) {
    tr.route = "interval-lp";
    const auto boxes = split_box(iv->box, caps.max_patterns);
    const SignVector zero_rho(d->inner->rows());
    for (const auto& [tau, x] : subs)
      for (const auto& box : boxes) {
        ++tr.checks;
        if (interval_orthant(box, p.subspace.kernel_rep(), d->left, tau)) return found(tau, zero_rho);
      }
  } else {
    const auto targets = target_realizations(*d, caps);
    for (const auto& t : targets) tr.target_signs.push_back(t.first);
    if (!d->left) tr.target_signs.clear();
    std::function<bool(const SignVector&, const SignVector&)> test;
    if (const auto* sc = d->inner->as<ScaledClass>()) {
      tr.route = d->left ? "pair-sign" : "kernel-sign";
      test = [sc](const SignVector& tau, const SignVector& rho) {
        return pair_sign_feasible(sc->base, tau, rho).has_value();
      };
    } else {
      tr.route = "concordance";
      const SignSetMatrix w = d->inner->as<SignSetsClass>() ? d->inner->as<SignSetsClass>()->sets
                                                              : d->inner->as<SignPatternClass>()->pattern;
      test = [w](const SignVector& tau, const SignVector& rho) { return concordant_pair(rho, tau, w); };
    }
    for (const auto& [tau, x] : subs)
      for (const auto& [rho, y] : targets) {
        ++tr.checks;
        if (test(tau, rho)) return found(tau, rho);
      }
  }
  v.status = Status::Injective;
  v.diagnostics.candidates = tr.checks;
  v.certificate = std::move(tr);
  return v;
}

}  // namespace detail

std::vector<SignVector> subspace_sign_vectors(const Subspace& s, const Caps& caps) {
  std::vector<SignVector> out;
  for (auto& [tau, x] : detail::subspace_sign_realizations(s, caps)) out.push_back(std::move(tau));
  return out;
}

std::optional<QVector> pair_sign_feasible(const QMatrix& b, const SignVector& tau, const SignVector& rho) {
  if (static_cast<Index>(tau.size()) != b.cols() || static_cast<Index>(rho.size()) != b.rows())
    throw ShapeError("pair_sign_feasible: sign vector length mismatch");
  const SignConstraint c{b, rho};
  return strict_sign_feasible(QMatrix(0, b.cols()), tau, std::span<const SignConstraint>(&c, 1));
}

bool concordant_pair(const SignVector& rho, const SignVector& tau, const SignSetMatrix& w) {
  if (rho.size() != w.rows() || tau.size() != w.cols()) throw ShapeError("concordant_pair: size mismatch");
  for (std::size_t i = 0; i < w.rows(); ++i) {
    if (rho[i] == Sign::Zero) {
      if (!signset_row_orthogonal(std::span<const SignSet>(w.row(i), w.cols()), tau)) return false;
      continue;
    }
    bool ok = false;
    for (std::size_t j = 0; j < w.cols() && !ok; ++j)
      ok = tau[j] != Sign::Zero && w(i, j).contains(rho[i] * tau[j]);
    if (!ok) return false;
  }
  return true;
}

std::optional<QMatrix> realize_concordant(const SignSetMatrix& w, const QVector& x, const QVector& y) {
  const SignVector tau = sigma(x);
  const SignVector rho = sigma(y);
  if (!concordant_pair(rho, tau, w)) return std::nullopt;
  const auto n = static_cast<Index>(w.cols());
  QMatrix b = QMatrix::Zero(static_cast<Index>(w.rows()), n);
  for (std::size_t i = 0; i < w.rows(); ++i) {
    const auto ii = static_cast<Index>(i);
    if (rho[i] == Sign::Zero) {
      auto t = orthogonal_selection(std::span<const SignSet>(w.row(i), w.cols()), tau);
      if (!t) return std::nullopt;
      auto u = strict_sign_feasible(QMatrix(x.transpose()), *t);
      if (!u) return std::nullopt;
      b.row(ii) = u->transpose();
      continue;
    }
    std::size_t pivot = w.cols();
    for (std::size_t j = 0; j < w.cols() && pivot == w.cols(); ++j)
      if (tau[j] != Sign::Zero && w(i, j).contains(rho[i] * tau[j])) pivot = j;
    const auto pj = static_cast<Index>(pivot);
    // Other entries get sign-valid values of size eps; halve eps until they
    // cannot flip the sign of y_i.
    std::vector<int> unit(w.cols(), 0);
    for (std::size_t j = 0; j < w.cols(); ++j) {
      if (j == pivot) continue;
      const SignSet s = w(i, j);
      unit[j] = s.contains(Sign::Zero) ? 0 : (s.contains(Sign::Plus) ? 1 : -1);
    }
    Rational eps = 1;
    Rational rest;
    for (;;) {
      rest = 0;
      for (std::size_t j = 0; j < w.cols(); ++j)
        if (unit[j] != 0) rest += eps * unit[j] * x(static_cast<Index>(j));
      if (abs(rest) < abs(y(ii))) break;
      eps /= 2;
    }
    for (std::size_t j = 0; j < w.cols(); ++j)
      if (unit[j] != 0) b(ii, static_cast<Index>(j)) = eps * unit[j];
    b(ii, pj) = (y(ii) - rest) / x(pj);
  }
  return b;
}

}  // namespace inj
