#include "inj/classes.hpp"

namespace inj {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ShapeError(what);
}

bool all_singleton(const SignSetMatrix& w) {
  for (const auto& s : w.data())
    if (!s.is_singleton()) return false;
  return true;
}

}  // namespace

ClassPtr MatrixClass::sign_pattern(SignSetMatrix pattern) {
  require(all_singleton(pattern), "sign pattern entries must be single signs");
  const auto r = pattern.rows();
  const auto c = pattern.cols();
  return ClassPtr(new MatrixClass(SignPatternClass{std::move(pattern)}, r, c));
}

ClassPtr MatrixClass::sign_sets(SignSetMatrix sets) {
  const auto r = sets.rows();
  const auto c = sets.cols();
  return ClassPtr(new MatrixClass(SignSetsClass{std::move(sets)}, r, c));
}

ClassPtr MatrixClass::interval(IntervalBox box) {
  const auto r = box.rows();
  const auto c = box.cols();
  return ClassPtr(new MatrixClass(IntervalClass{std::move(box)}, r, c));
}

ClassPtr MatrixClass::scaled(QMatrix base) {
  const auto r = static_cast<std::size_t>(base.rows());
  const auto c = static_cast<std::size_t>(base.cols());
  return ClassPtr(new MatrixClass(ScaledClass{std::move(base)}, r, c));
}

ClassPtr MatrixClass::product(QMatrix left, ClassPtr right) {
  require(static_cast<std::size_t>(left.cols()) == right->rows(), "product: left columns must equal right rows");
  const auto r = static_cast<std::size_t>(left.rows());
  const auto c = right->cols();
  return ClassPtr(new MatrixClass(ProductClass{std::move(left), std::move(right)}, r, c));
}

ClassPtr MatrixClass::product(ClassPtr left, ClassPtr right) {
  require(left->cols() == right->rows(), "product: left columns must equal right rows");
  const auto r = left->rows();
  const auto c = right->cols();
  return ClassPtr(new MatrixClass(ProductClass{std::move(left), std::move(right)}, r, c));
}

ClassPtr MatrixClass::augmented(QMatrix top, ClassPtr inner) {
  require(static_cast<std::size_t>(top.cols()) == inner->cols() || top.rows() == 0,
          "augmented: top block must have as many columns as the inner class");
  if (top.rows() == 0) top = QMatrix(0, static_cast<Index>(inner->cols()));
  const auto r = static_cast<std::size_t>(top.rows()) + inner->rows();
  const auto c = inner->cols();
  return ClassPtr(new MatrixClass(AugmentedClass{std::move(top), std::move(inner)}, r, c));
}

std::string MatrixClass::describe() const {
  const std::string shape = std::to_string(rows_) + "x" + std::to_string(cols_);
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SignPatternClass>) {
          return "SignPattern " + shape;
        } else if constexpr (std::is_same_v<T, SignSetsClass>) {
          return "SignSets " + shape;
        } else if constexpr (std::is_same_v<T, IntervalClass>) {
          return "Interval " + shape;
        } else if constexpr (std::is_same_v<T, ScaledClass>) {
          return "Scaled " + shape;
        } else if constexpr (std::is_same_v<T, ProductClass>) {
          std::string l;
          if (const auto* m = std::get_if<QMatrix>(&v.left))
            l = "matrix " + std::to_string(m->rows()) + "x" + std::to_string(m->cols());
          else
            l = std::get<ClassPtr>(v.left)->describe();
          return "Product(" + l + ", " + v.right->describe() + ")";
        } else {
          return "Augmented(top " + std::to_string(v.top.rows()) + "x" + std::to_string(v.top.cols()) + ", " +
                 v.inner->describe() + ")";
        }
      },
      v_);
}

IntervalEntry interval_of(SignSet s) {
  switch (s.bits()) {
    case SignSet::kZero:
      return IntervalEntry::point(Rational(0));
    case SignSet::kMinus:
      return IntervalEntry::negative();
    case SignSet::kPlus:
      return IntervalEntry::positive();
    case SignSet::kMinus | SignSet::kZero:
      return IntervalEntry::make(std::nullopt, true, Rational(0), false);
    case SignSet::kZero | SignSet::kPlus:
      return IntervalEntry::make(Rational(0), false, std::nullopt, true);
    case SignSet::kMinus | SignSet::kPlus:
      return IntervalEntry::make(std::nullopt, true, std::nullopt, true, true);
    default:
      return IntervalEntry::real_line();
  }
}

IntervalBox d_of_signsets(const SignSetMatrix& w) {
  IntervalBox out(w.rows(), w.cols());
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j) out(i, j) = interval_of(w(i, j));
  return out;
}

std::size_t pattern_count(const SignSetMatrix& w) {
  std::size_t total = 1;
  for (const auto& s : w.data()) {
    if (total > (std::size_t{1} << 60)) return total;
    total *= s.count();
  }
  return total;
}

std::vector<SignSetMatrix> enumerate_patterns(const SignSetMatrix& w, std::size_t cap) {
  const std::size_t total = pattern_count(w);
  if (total > cap) throw CapExceeded("too many sign patterns", total, cap);
  std::vector<SignSetMatrix> out;
  out.reserve(total);
  const auto& entries = w.data();
  std::vector<std::vector<Sign>> choices;
  choices.reserve(entries.size());
  for (const auto& s : entries) choices.push_back(s.members());
  std::vector<std::size_t> idx(entries.size(), 0);
  for (std::size_t k = 0; k < total; ++k) {
    SignSetMatrix p(w.rows(), w.cols());
    for (std::size_t e = 0; e < entries.size(); ++e)
      p(e / w.cols(), e % w.cols()) = SignSet::of(choices[e][idx[e]]);
    out.push_back(std::move(p));
    for (std::size_t e = entries.size(); e-- > 0;) {
      if (++idx[e] < choices[e].size()) break;
      idx[e] = 0;
    }
  }
  return out;
}

SignSetMatrix sign_pattern_of(const QMatrix& m) {
  SignSetMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = SignSet::of(sign_of(m(i, j)));
  return out;
}

ClassPtr augment_with_kernel_rep(const Subspace& s, ClassPtr inner) {
  if (static_cast<Index>(inner->cols()) != s.ambient_dim())
    throw ShapeError("augment_with_kernel_rep: class columns must equal the ambient dimension of S");
  return MatrixClass::augmented(s.kernel_rep(), std::move(inner));
}

namespace {

struct Counters {
  int kappa = 0;
  int lambda = 0;
  int mu = 0;
  int nu = 0;
};

bool absorbs_row_scaling(const ProductClass& p) {
  const auto* left = std::get_if<ClassPtr>(&p.left);
  return left && ((*left)->as<SignPatternClass>() || (*left)->as<SignSetsClass>());
}

Grid<Polynomial> constant_grid(const QMatrix& m) {
  Grid<Polynomial> g(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      g(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Polynomial(m(i, j));
  return g;
}

Grid<Polynomial> multiply(const Grid<Polynomial>& a, const Grid<Polynomial>& b) {
  Grid<Polynomial> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

SymbolicView view_impl(const MatrixClass& c, Counters& ctr, bool absorb_row_scaling);

SymbolicView pattern_view(const SignSetMatrix& w, Counters& ctr) {
  SymbolicView v{Grid<Polynomial>(w.rows(), w.cols()), {}};
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j) {
      const Sign s = w(i, j).only();
      if (s == Sign::Zero) continue;
      Param p{ParamKind::SignAtom, ++ctr.mu};
      v.entries(i, j) = s == Sign::Plus ? Polynomial::variable(p) : -Polynomial::variable(p);
      v.params.push_back({p, IntervalEntry::positive()});
    }
  return v;
}

SymbolicView view_impl(const MatrixClass& c, Counters& ctr, bool absorb_row_scaling) {
  if (const auto* p = c.as<SignPatternClass>()) return pattern_view(p->pattern, ctr);
  if (const auto* p = c.as<SignSetsClass>()) {
    if (!all_singleton(p->sets)) throw Unsupported("symbolic view of a sign-set class with non-singleton entries");
    return pattern_view(p->sets, ctr);
  }
  if (const auto* p = c.as<IntervalClass>()) {
    SymbolicView v{Grid<Polynomial>(p->box.rows(), p->box.cols()), {}};
    for (std::size_t i = 0; i < p->box.rows(); ++i)
      for (std::size_t j = 0; j < p->box.cols(); ++j) {
        const auto& e = p->box(i, j);
        if (e.punctured()) throw Unsupported("symbolic view of a punctured interval entry");
        if (e.is_point()) {
          v.entries(i, j) = Polynomial(*e.lower());
          continue;
        }
        Param prm{ParamKind::IntervalAtom, ++ctr.nu};
        v.entries(i, j) = Polynomial::variable(prm);
        v.params.push_back({prm, e});
      }
    return v;
  }
  if (const auto* p = c.as<ScaledClass>()) {
    const auto r = static_cast<std::size_t>(p->base.rows());
    const auto n = static_cast<std::size_t>(p->base.cols());
    SymbolicView v{Grid<Polynomial>(r, n), {}};
    std::vector<Polynomial> kappa(r, Polynomial(Rational(1)));
    std::vector<Polynomial> lambda(n);
    if (!absorb_row_scaling) {
      for (std::size_t i = 0; i < r; ++i) {
        Param prm{ParamKind::RowScale, ++ctr.kappa};
        kappa[i] = Polynomial::variable(prm);
        v.params.push_back({prm, IntervalEntry::positive()});
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      Param prm{ParamKind::ColScale, ++ctr.lambda};
      lambda[j] = Polynomial::variable(prm);
      v.params.push_back({prm, IntervalEntry::positive()});
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Rational& b = p->base(static_cast<Index>(i), static_cast<Index>(j));
        if (!b.is_zero()) v.entries(i, j) = kappa[i] * lambda[j] * b;
      }
    return v;
  }
  if (const auto* p = c.as<ProductClass>()) {
    SymbolicView left;
    if (const auto* m = std::get_if<QMatrix>(&p->left))
      left.entries = constant_grid(*m);
    else
      left = view_impl(*std::get<ClassPtr>(p->left), ctr, false);
    SymbolicView right = view_impl(*p->right, ctr, absorbs_row_scaling(*p));
    SymbolicView v{multiply(left.entries, right.entries), std::move(left.params)};
    v.params.insert(v.params.end(), right.params.begin(), right.params.end());
    return v;
  }
  const auto& a = std::get<AugmentedClass>(c.variant());
  SymbolicView inner = view_impl(*a.inner, ctr, false);
  SymbolicView v{Grid<Polynomial>(c.rows(), c.cols()), std::move(inner.params)};
  for (Index i = 0; i < a.top.rows(); ++i)
    for (Index j = 0; j < a.top.cols(); ++j)
      v.entries(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Polynomial(a.top(i, j));
  const auto offset = static_cast<std::size_t>(a.top.rows());
  for (std::size_t i = 0; i < inner.entries.rows(); ++i)
    for (std::size_t j = 0; j < inner.entries.cols(); ++j) v.entries(offset + i, j) = inner.entries(i, j);
  return v;
}

Rational lookup(const Assignment& values, Param p) {
  auto it = values.find(p);
  if (it == values.end()) throw std::invalid_argument("no value for parameter " + p.name());
  return it->second;
}

QMatrix pattern_value(const SignSetMatrix& w, const Assignment& values, Counters& ctr) {
  QMatrix m = QMatrix::Zero(static_cast<Index>(w.rows()), static_cast<Index>(w.cols()));
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j) {
      const Sign s = w(i, j).only();
      if (s == Sign::Zero) continue;
      Rational x = lookup(values, Param{ParamKind::SignAtom, ++ctr.mu});
      m(static_cast<Index>(i), static_cast<Index>(j)) = s == Sign::Plus ? x : Rational(-x);
    }
  return m;
}

Member realize_impl(const MatrixClass& c, const Assignment& values, Counters& ctr, bool absorb_row_scaling) {
  if (const auto* p = c.as<SignPatternClass>()) return Member{pattern_value(p->pattern, values, ctr), {}, {}, {}};
  if (const auto* p = c.as<SignSetsClass>()) {
    if (!all_singleton(p->sets)) throw Unsupported("realize: sign-set class with non-singleton entries");
    return Member{pattern_value(p->sets, values, ctr), {}, {}, {}};
  }
  if (const auto* p = c.as<IntervalClass>()) {
    QMatrix m(static_cast<Index>(p->box.rows()), static_cast<Index>(p->box.cols()));
    for (std::size_t i = 0; i < p->box.rows(); ++i)
      for (std::size_t j = 0; j < p->box.cols(); ++j) {
        const auto& e = p->box(i, j);
        m(static_cast<Index>(i), static_cast<Index>(j)) =
            e.is_point() ? *e.lower() : lookup(values, Param{ParamKind::IntervalAtom, ++ctr.nu});
      }
    return Member{std::move(m), {}, {}, {}};
  }
  if (const auto* p = c.as<ScaledClass>()) {
    const Index r = p->base.rows();
    const Index n = p->base.cols();
    Member out;
    out.row_scale = QVector::Ones(r);
    out.col_scale = QVector(n);
    if (!absorb_row_scaling)
      for (Index i = 0; i < r; ++i) out.row_scale(i) = lookup(values, Param{ParamKind::RowScale, ++ctr.kappa});
    for (Index j = 0; j < n; ++j) out.col_scale(j) = lookup(values, Param{ParamKind::ColScale, ++ctr.lambda});
    out.value = out.row_scale.asDiagonal() * p->base * out.col_scale.asDiagonal();
    return out;
  }
  if (const auto* p = c.as<ProductClass>()) {
    Member out;
    QMatrix left;
    if (const auto* m = std::get_if<QMatrix>(&p->left)) {
      left = *m;
    } else {
      out.factors.push_back(realize_impl(*std::get<ClassPtr>(p->left), values, ctr, false));
      left = out.factors.back().value;
    }
    out.factors.push_back(realize_impl(*p->right, values, ctr, absorbs_row_scaling(*p)));
    out.value = left * out.factors.back().value;
    return out;
  }
  const auto& a = std::get<AugmentedClass>(c.variant());
  Member out;
  out.factors.push_back(realize_impl(*a.inner, values, ctr, false));
  out.value = QMatrix(static_cast<Index>(c.rows()), static_cast<Index>(c.cols()));
  out.value.topRows(a.top.rows()) = a.top;
  out.value.bottomRows(out.factors.back().value.rows()) = out.factors.back().value;
  return out;
}

}  // namespace

SymbolicView symbolic_view(const MatrixClass& c) {
  Counters ctr;
  return view_impl(c, ctr, false);
}

Grid<Polynomial> symbolic_product(const QMatrix& left, const ClassPtr& right) {
  return symbolic_view(*MatrixClass::product(left, right)).entries;
}

Grid<Polynomial> symbolic_product(const ClassPtr& left, const ClassPtr& right) {
  return symbolic_view(*MatrixClass::product(left, right)).entries;
}

Member realize(const MatrixClass& c, const Assignment& values) {
  Counters ctr;
  return realize_impl(c, values, ctr, false);
}

bool is_member(const MatrixClass& c, const Member& m) {
  if (m.value.rows() != static_cast<Index>(c.rows()) || m.value.cols() != static_cast<Index>(c.cols())) return false;
  auto entries_ok = [&](auto&& ok) {
    for (Index i = 0; i < m.value.rows(); ++i)
      for (Index j = 0; j < m.value.cols(); ++j)
        if (!ok(static_cast<std::size_t>(i), static_cast<std::size_t>(j), m.value(i, j))) return false;
    return true;
  };
  if (const auto* p = c.as<SignPatternClass>())
    return entries_ok([&](auto i, auto j, const Rational& x) { return p->pattern(i, j).contains(sign_of(x)); });
  if (const auto* p = c.as<SignSetsClass>())
    return entries_ok([&](auto i, auto j, const Rational& x) { return p->sets(i, j).contains(sign_of(x)); });
  if (const auto* p = c.as<IntervalClass>())
    return entries_ok([&](auto i, auto j, const Rational& x) { return p->box(i, j).contains(x); });
  if (const auto* p = c.as<ScaledClass>()) {
    if (m.row_scale.size() != p->base.rows() || m.col_scale.size() != p->base.cols()) return false;
    for (Index i = 0; i < m.row_scale.size(); ++i)
      if (m.row_scale(i) <= 0) return false;
    for (Index j = 0; j < m.col_scale.size(); ++j)
      if (m.col_scale(j) <= 0) return false;
    return m.value == QMatrix(m.row_scale.asDiagonal() * p->base * m.col_scale.asDiagonal());
  }
  if (const auto* p = c.as<ProductClass>()) {
    if (const auto* left = std::get_if<QMatrix>(&p->left)) {
      if (m.factors.size() != 1 || !is_member(*p->right, m.factors[0])) return false;
      return m.value == QMatrix(*left * m.factors[0].value);
    }
    if (m.factors.size() != 2) return false;
    if (!is_member(*std::get<ClassPtr>(p->left), m.factors[0]) || !is_member(*p->right, m.factors[1])) return false;
    return m.value == QMatrix(m.factors[0].value * m.factors[1].value);
  }
  const auto& a = std::get<AugmentedClass>(c.variant());
  if (m.factors.size() != 1 || !is_member(*a.inner, m.factors[0])) return false;
  return m.value.topRows(a.top.rows()) == a.top && m.value.bottomRows(m.factors[0].value.rows()) == m.factors[0].value;
}

Member canonical_member(const MatrixClass& c) {
  if (const auto* p = c.as<SignSetsClass>()) {
    QMatrix m(static_cast<Index>(p->sets.rows()), static_cast<Index>(p->sets.cols()));
    for (std::size_t i = 0; i < p->sets.rows(); ++i)
      for (std::size_t j = 0; j < p->sets.cols(); ++j) {
        const SignSet s = p->sets(i, j);
        m(static_cast<Index>(i), static_cast<Index>(j)) = s.contains(Sign::Plus) ? 1 : (s.contains(Sign::Minus) ? -1 : 0);
      }
    return Member{std::move(m), {}, {}, {}};
  }
  if (const auto* p = c.as<IntervalClass>()) {
    QMatrix m(static_cast<Index>(p->box.rows()), static_cast<Index>(p->box.cols()));
    for (std::size_t i = 0; i < p->box.rows(); ++i)
      for (std::size_t j = 0; j < p->box.cols(); ++j)
        m(static_cast<Index>(i), static_cast<Index>(j)) = p->box(i, j).interior_point();
    return Member{std::move(m), {}, {}, {}};
  }
  if (const auto* p = c.as<ProductClass>()) {
    Member out;
    QMatrix left;
    if (const auto* m = std::get_if<QMatrix>(&p->left)) {
      left = *m;
    } else {
      out.factors.push_back(canonical_member(*std::get<ClassPtr>(p->left)));
      left = out.factors.back().value;
    }
    out.factors.push_back(canonical_member(*p->right));
    out.value = left * out.factors.back().value;
    return out;
  }
  if (const auto* a = c.as<AugmentedClass>()) {
    Member out;
    out.factors.push_back(canonical_member(*a->inner));
    out.value = QMatrix(static_cast<Index>(c.rows()), static_cast<Index>(c.cols()));
    out.value.topRows(a->top.rows()) = a->top;
    out.value.bottomRows(out.factors.back().value.rows()) = out.factors.back().value;
    return out;
  }
  // SignPattern and Scaled: every parameter set to 1.
  Assignment ones;
  for (const auto& pd : symbolic_view(c).params) ones[pd.param] = 1;
  return realize(c, ones);
}

}  // namespace inj
