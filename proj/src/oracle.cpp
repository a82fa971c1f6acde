#include "inj/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <random>

#include "inj/error.hpp"
#include "internal.hpp"

namespace inj {

namespace {

using Rng = std::mt19937_64;

enum class AtomKind { Sign, Interval, Scale };

// Double copies of an interval piece, so sampling never touches GMP.
struct Piece {
  bool has_lo = false, has_hi = false, lo_open = true, hi_open = true;
  double lo = 0, hi = 0;
};

Piece piece_of(const IntervalEntry& e) {
  Piece p;
  p.has_lo = e.lower().has_value();
  p.has_hi = e.upper().has_value();
  p.lo_open = e.lower_open();
  p.hi_open = e.upper_open();
  if (p.has_lo) p.lo = to_double(*e.lower());
  if (p.has_hi) p.hi = to_double(*e.upper());
  return p;
}

struct Atom {
  AtomKind kind;
  SignSet set;                        // Sign
  IntervalEntry entry;                // Interval: the full entry
  std::vector<IntervalEntry> halves;  // Interval: pieces to sample from
  std::array<Sign, 3> members{};      // Sign: members of `set`
  std::size_t member_count = 0;
  Piece whole;
  std::vector<Piece> pieces;  // parallel to `halves`
};

Atom make_atom(AtomKind kind, SignSet set = SignSet(), IntervalEntry entry = IntervalEntry()) {
  Atom a;
  a.kind = kind;
  a.set = set;
  a.entry = std::move(entry);
  return a;
}

void prepare(Atom& a) {
  const auto m = a.set.members();
  a.member_count = m.size();
  std::copy(m.begin(), m.end(), a.members.begin());
  a.whole = piece_of(a.entry);
  a.pieces.clear();
  for (const auto& h : a.halves) a.pieces.push_back(piece_of(h));
}

struct Draw {
  double value = 0;
  double t = 0;
  int choice = 0;
};

struct Node {
  enum class Type { Entries, Scaled, FixedProduct, ClassProduct, Augmented } type;
  Index rows = 0;
  Index cols = 0;
  std::vector<int> atom;  // Entries: atom index per entry, -1 for a constant
  QMatrix constant_q;
  Matrix<double> constant_d;
  std::vector<int> kappa;  // Scaled: -1 when the row scaling is absorbed
  std::vector<int> lambda;
  QMatrix fixed_q;  // Scaled base, FixedProduct left, Augmented top
  Matrix<double> fixed_d;
  std::vector<std::unique_ptr<Node>> children;
  mutable Matrix<double> out_d;  // scratch for the float evaluation
};

class Model {
 public:
  explicit Model(const MatrixClass& c) : root_(compile(c, false)) {
    for (auto& a : atoms_) prepare(a);
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<std::vector<int>>& groups() const { return groups_; }

  /// The reference stays valid until the next float evaluation.
  const Matrix<double>& eval(const std::vector<double>& v) const { return eval_d(*root_, v); }
  Index rows() const { return root_->rows; }
  Member eval(const std::vector<Rational>& v) const { return eval_q(*root_, v); }

 private:
  std::unique_ptr<Node> compile(const MatrixClass& c, bool absorb) {
    auto node = std::make_unique<Node>();
    node->rows = static_cast<Index>(c.rows());
    node->cols = static_cast<Index>(c.cols());
    auto entries = [&](auto&& make_atom) {
      node->type = Node::Type::Entries;
      node->constant_q = QMatrix::Zero(node->rows, node->cols);
      node->atom.assign(c.rows() * c.cols(), -1);
      std::vector<int> group;
      for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) {
          std::optional<Atom> a = make_atom(i, j, node->constant_q(static_cast<Index>(i), static_cast<Index>(j)));
          if (!a) continue;
          node->atom[i * c.cols() + j] = static_cast<int>(atoms_.size());
          group.push_back(static_cast<int>(atoms_.size()));
          atoms_.push_back(std::move(*a));
        }
      node->constant_d = to_double(node->constant_q);
      if (!group.empty()) groups_.push_back(std::move(group));
    };
    auto sign_atom = [](SignSet s) -> std::optional<Atom> {
      if (s == SignSet::of(Sign::Zero)) return std::nullopt;
      return make_atom(AtomKind::Sign, s);
    };
    if (const auto* p = c.as<SignPatternClass>()) {
      entries([&](std::size_t i, std::size_t j, Rational&) { return sign_atom(p->pattern(i, j)); });
    } else if (const auto* p = c.as<SignSetsClass>()) {
      entries([&](std::size_t i, std::size_t j, Rational&) { return sign_atom(p->sets(i, j)); });
    } else if (const auto* p = c.as<IntervalClass>()) {
      entries([&](std::size_t i, std::size_t j, Rational& constant) -> std::optional<Atom> {
        const IntervalEntry& e = p->box(i, j);
        if (e.is_point()) {
          constant = *e.lower();
          return std::nullopt;
        }
        Atom a = make_atom(AtomKind::Interval, SignSet(), e);
        auto [lo, hi] = e.split_punctured();
        a.halves.push_back(lo);
        if (hi) a.halves.push_back(*hi);
        return a;
      });
    } else if (const auto* p = c.as<ScaledClass>()) {
      node->type = Node::Type::Scaled;
      node->fixed_q = p->base;
      node->fixed_d = to_double(p->base);
      std::vector<int> kg, lg;
      for (Index i = 0; i < p->base.rows(); ++i) {
        node->kappa.push_back(absorb ? -1 : static_cast<int>(atoms_.size()));
        if (absorb) continue;
        kg.push_back(static_cast<int>(atoms_.size()));
        atoms_.push_back(make_atom(AtomKind::Scale));
      }
      for (Index j = 0; j < p->base.cols(); ++j) {
        node->lambda.push_back(static_cast<int>(atoms_.size()));
        lg.push_back(static_cast<int>(atoms_.size()));
        atoms_.push_back(make_atom(AtomKind::Scale));
      }
      if (!kg.empty()) groups_.push_back(std::move(kg));
      if (!lg.empty()) groups_.push_back(std::move(lg));
    } else if (const auto* p = c.as<ProductClass>()) {
      if (const auto* a = std::get_if<QMatrix>(&p->left)) {
        node->type = Node::Type::FixedProduct;
        node->fixed_q = *a;
        node->fixed_d = to_double(*a);
      } else {
        node->type = Node::Type::ClassProduct;
        node->children.push_back(compile(*std::get<ClassPtr>(p->left), false));
      }
      const auto* lc = std::get_if<ClassPtr>(&p->left);
      const bool absorbs = lc && ((*lc)->as<SignPatternClass>() || (*lc)->as<SignSetsClass>());
      node->children.push_back(compile(*p->right, absorbs));
    } else {
      const auto& a = std::get<AugmentedClass>(c.variant());
      node->type = Node::Type::Augmented;
      node->fixed_q = a.top;
      node->fixed_d = to_double(a.top);
      node->children.push_back(compile(*a.inner, false));
    }
    node->out_d.resize(node->rows, node->cols);
    return node;
  }

  template <typename Scalar>
  static Scalar scale_value(int atom, const std::vector<Scalar>& v) {
    return atom < 0 ? Scalar(1) : v[static_cast<std::size_t>(atom)];
  }

  static const Matrix<double>& eval_d(const Node& n, const std::vector<double>& v) {
    Matrix<double>& m = n.out_d;
    switch (n.type) {
      case Node::Type::Entries:
        m = n.constant_d;
        for (Index i = 0; i < n.rows; ++i)
          for (Index j = 0; j < n.cols; ++j)
            if (int a = n.atom[static_cast<std::size_t>(i * n.cols + j)]; a >= 0) m(i, j) = v[static_cast<std::size_t>(a)];
        break;
      case Node::Type::Scaled:
        for (Index i = 0; i < n.rows; ++i)
          for (Index j = 0; j < n.cols; ++j)
            m(i, j) = n.fixed_d(i, j) * scale_value(n.kappa[static_cast<std::size_t>(i)], v) *
                      scale_value(n.lambda[static_cast<std::size_t>(j)], v);
        break;
      case Node::Type::FixedProduct: m.noalias() = n.fixed_d * eval_d(*n.children[0], v); break;
      case Node::Type::ClassProduct: m.noalias() = eval_d(*n.children[0], v) * eval_d(*n.children[1], v); break;
      case Node::Type::Augmented:
        m.topRows(n.fixed_d.rows()) = n.fixed_d;
        m.bottomRows(n.rows - n.fixed_d.rows()) = eval_d(*n.children[0], v);
        break;
    }
    return m;
  }

  static Member eval_q(const Node& n, const std::vector<Rational>& v) {
    Member out;
    switch (n.type) {
      case Node::Type::Entries:
        out.value = n.constant_q;
        for (Index i = 0; i < n.rows; ++i)
          for (Index j = 0; j < n.cols; ++j)
            if (int a = n.atom[static_cast<std::size_t>(i * n.cols + j)]; a >= 0) out.value(i, j) = v[static_cast<std::size_t>(a)];
        break;
      case Node::Type::Scaled:
        out.row_scale = QVector(n.rows);
        out.col_scale = QVector(n.cols);
        for (Index i = 0; i < n.rows; ++i) out.row_scale(i) = scale_value(n.kappa[static_cast<std::size_t>(i)], v);
        for (Index j = 0; j < n.cols; ++j) out.col_scale(j) = scale_value(n.lambda[static_cast<std::size_t>(j)], v);
        out.value = out.row_scale.asDiagonal() * n.fixed_q * out.col_scale.asDiagonal();
        break;
      case Node::Type::FixedProduct:
        out.factors.push_back(eval_q(*n.children[0], v));
        out.value = n.fixed_q * out.factors[0].value;
        break;
      case Node::Type::ClassProduct:
        out.factors.push_back(eval_q(*n.children[0], v));
        out.factors.push_back(eval_q(*n.children[1], v));
        out.value = out.factors[0].value * out.factors[1].value;
        break;
      case Node::Type::Augmented:
        out.factors.push_back(eval_q(*n.children[0], v));
        out.value = QMatrix(n.rows, n.cols);
        out.value.topRows(n.fixed_q.rows()) = n.fixed_q;
        out.value.bottomRows(n.rows - n.fixed_q.rows()) = out.factors[0].value;
        break;
    }
    return out;
  }

  std::vector<Atom> atoms_;
  std::vector<std::vector<int>> groups_;
  std::unique_ptr<Node> root_;
};

class Sampler {
 public:
  Sampler(std::uint64_t seed, int bits) : rng_(seed), bits_(std::clamp(bits, 1, 30)) {}

  std::uint64_t below(std::uint64_t n) { return rng_() % n; }
  bool coin(std::uint64_t one_in) { return below(one_in) == 0; }

  // k / 2^e with 1 <= k < 2^bits, 0 <= e <= bits.
  double positive() {
    const auto k = 1 + below((std::uint64_t{1} << bits_) - 1);
    const auto e = static_cast<int>(below(static_cast<std::uint64_t>(bits_) + 1));
    return std::ldexp(static_cast<double>(k), -e);
  }
  // k / 2^bits in (0, 1).
  double unit() {
    const auto k = 1 + below((std::uint64_t{1} << bits_) - 1);
    return std::ldexp(static_cast<double>(k), -bits_);
  }

  Draw draw(const Atom& a) {
    Draw d;
    switch (a.kind) {
      case AtomKind::Scale:
        d.t = positive();
        d.value = d.t;
        break;
      case AtomKind::Sign: {
        d.choice = static_cast<int>(below(a.member_count));
        d.t = positive();
        d.value = static_cast<int>(a.members[static_cast<std::size_t>(d.choice)]) * d.t;
        break;
      }
      case AtomKind::Interval: {
        d.choice = static_cast<int>(below(a.pieces.size()));
        const Piece& h = a.pieces[static_cast<std::size_t>(d.choice)];
        if (h.has_lo && h.has_hi) {
          // Occasionally land on a closed endpoint.
          d.t = unit();
          if (!h.lo_open && coin(8)) d.t = 0;
          if (!h.hi_open && coin(8)) d.t = 1;
          d.value = h.lo + d.t * (h.hi - h.lo);
        } else if (h.has_lo) {
          d.t = (!h.lo_open && coin(8)) ? 0 : positive();
          d.value = h.lo + d.t;
        } else if (h.has_hi) {
          d.t = (!h.hi_open && coin(8)) ? 0 : positive();
          d.value = h.hi - d.t;
        } else {
          d.t = coin(2) ? positive() : -positive();
          d.value = d.t;
        }
        break;
      }
    }
    return d;
  }

  void shuffle(std::vector<std::size_t>& idx, std::size_t n) {
    idx.resize(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[below(i)]);
  }

 private:
  Rng rng_;
  int bits_;
};

Rational exact_value(const Atom& a, const Draw& d) {
  const Rational t = exact_from_double(d.t);
  switch (a.kind) {
    case AtomKind::Scale: return t;
    case AtomKind::Sign: return exact_from_double(d.value);
    case AtomKind::Interval: {
      const IntervalEntry& h = a.halves[static_cast<std::size_t>(d.choice)];
      if (h.is_bounded()) return *h.lower() + t * (*h.upper() - *h.lower());
      if (h.lower()) return *h.lower() + t;
      if (h.upper()) return *h.upper() - t;
      return t;
    }
  }
  return t;
}

bool exact_ok(const Atom& a, const Rational& v) {
  switch (a.kind) {
    case AtomKind::Scale: return v > 0;
    case AtomKind::Sign: return a.set.contains(sign_of(v));
    case AtomKind::Interval: return a.entry.contains(v);
  }
  return false;
}

bool float_ok(const Atom& a, double v, double slack) {
  switch (a.kind) {
    case AtomKind::Scale: return v > slack;
    case AtomKind::Sign:
      if (std::fabs(v) <= slack) return a.set.contains(Sign::Zero);
      return a.set.contains(v > 0 ? Sign::Plus : Sign::Minus);
    case AtomKind::Interval: {
      const Piece& e = a.whole;
      if (e.has_lo && (e.lo_open ? v <= e.lo + slack : v < e.lo - slack)) return false;
      if (e.has_hi && (e.hi_open ? v >= e.hi - slack : v > e.hi + slack)) return false;
      if (a.entry.punctured() && std::fabs(v) <= slack) return false;
      return true;
    }
  }
  return false;
}

// Bases of S and of some coordinate faces S ∩ {x_J = 0}, |J| <= 3.
struct Face {
  QMatrix basis_q;
  Matrix<double> basis_d;
};

std::vector<Face> subspace_faces(const Subspace& s) {
  std::vector<Face> faces{{s.basis(), to_double(s.basis())}};
  const Index n = s.ambient_dim();
  const QMatrix& z = s.kernel_rep();
  std::vector<std::vector<Index>> subsets;
  for (Index a = 0; a < n; ++a) {
    subsets.push_back({a});
    for (Index b = a + 1; b < n; ++b) {
      subsets.push_back({a, b});
      for (Index c = b + 1; c < n; ++c) subsets.push_back({a, b, c});
    }
  }
  for (const auto& j : subsets) {
    if (faces.size() >= 256) break;
    if (static_cast<Index>(j.size()) >= n) continue;
    QMatrix m = QMatrix::Zero(z.rows() + static_cast<Index>(j.size()), n);
    m.topRows(z.rows()) = z;
    for (std::size_t k = 0; k < j.size(); ++k) m(z.rows() + static_cast<Index>(k), j[k]) = 1;
    QMatrix b = kernel_basis(m);
    if (b.cols() == 0) continue;
    if (std::any_of(faces.begin(), faces.end(), [&](const Face& f) { return f.basis_q == b; })) continue;
    faces.push_back({b, to_double(b)});
  }
  return faces;
}

std::optional<SingularWitness> confirm(const Problem& p, const Model& model, const std::vector<Draw>& draws,
                                       const std::vector<int>& solved, const QVector& x) {
  std::vector<Rational> v(draws.size());
  for (std::size_t a = 0; a < draws.size(); ++a) v[a] = exact_value(model.atoms()[a], draws[a]);
  for (int a : solved) v[static_cast<std::size_t>(a)] = 0;
  const QVector f0 = model.eval(v).value * x;
  QMatrix c(f0.size(), static_cast<Index>(solved.size()));
  for (std::size_t k = 0; k < solved.size(); ++k) {
    v[static_cast<std::size_t>(solved[k])] = 1;
    c.col(static_cast<Index>(k)) = model.eval(v).value * x - f0;
    v[static_cast<std::size_t>(solved[k])] = 0;
  }
  auto g = solve(c, QVector(-f0));
  if (!g) return std::nullopt;
  for (std::size_t k = 0; k < solved.size(); ++k) {
    const auto a = static_cast<std::size_t>(solved[k]);
    v[a] = (*g)(static_cast<Index>(k));
    if (!exact_ok(model.atoms()[a], v[a])) return std::nullopt;
  }
  SingularWitness w{model.eval(v), x, std::nullopt};
  if (!verify_witness(w, p)) return std::nullopt;
  detail::attach_lift(p, w);
  if (w.lift && !verify_witness(w, p)) w.lift.reset();
  return w;
}

}  // namespace

Member sample_class(const MatrixClass& c, const OracleConfig& cfg) {
  Model model(c);
  Sampler s(cfg.seed, cfg.magnitude_bits);
  std::vector<Rational> v;
  for (const auto& a : model.atoms()) v.push_back(exact_value(a, s.draw(a)));
  return model.eval(v);
}

std::optional<SingularWitness> falsify(const Problem& p, const OracleConfig& cfg, FalsifyStats* stats) {
  p.validate();
  FalsifyStats local;
  FalsifyStats& st = stats ? *stats : local;
  st = {};
  if (p.subspace.dim() == 0) return std::nullopt;
  const ClassPtr eff = p.effective_class();
  Model model(*eff);
  Sampler s(cfg.seed, cfg.magnitude_bits);
  const std::vector<Face> faces = cfg.hint ? std::vector<Face>{} : subspace_faces(p.subspace);

  if (model.groups().empty()) {
    // A single fixed matrix: decide directly.
    ++st.trials_run;
    Member m = model.eval(std::vector<Rational>{});
    QMatrix stacked(p.subspace.kernel_rep().rows() + m.value.rows(), m.value.cols());
    stacked.topRows(p.subspace.kernel_rep().rows()) = p.subspace.kernel_rep();
    stacked.bottomRows(m.value.rows()) = m.value;
    QMatrix k = kernel_basis(stacked);
    if (k.cols() == 0) return std::nullopt;
    SingularWitness w{std::move(m), k.col(0), std::nullopt};
    if (!verify_witness(w, p)) return std::nullopt;
    return w;
  }

  std::vector<Draw> draws(model.atoms().size());
  std::vector<double> vals(draws.size());
  std::size_t widest = 0;
  for (const auto& g : model.groups()) widest = std::max(widest, g.size());
  const Index m = model.rows();
  const auto gw = static_cast<Index>(widest);
  // Buffers reused by every trial.
  Matrix<double> c(m, gw), q(m, gw), r(gw, gw);
  Vector<double> f0(m), rhs(m), col(m), y(gw), g(gw);
  Vector<double> xd(p.subspace.ambient_dim());
  std::vector<double> coef;
  std::vector<std::size_t> order;
  std::vector<int> solved;
  solved.reserve(widest);
  QVector xq;
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    ++st.trials_run;
    // Kernel candidate.
    const Face* face = nullptr;
    if (cfg.hint) {
      xq = *cfg.hint;
      for (Index i = 0; i < xd.size(); ++i) xd(i) = to_double(xq(i));
    } else {
      face = &faces[s.coin(2) ? 0 : s.below(faces.size())];
      coef.resize(static_cast<std::size_t>(face->basis_d.cols()));
      xd.setZero();
      for (std::size_t k = 0; k < coef.size(); ++k) {
        coef[k] = s.coin(4) ? 0.0 : (s.coin(2) ? 1.0 : -1.0) * static_cast<double>(1 + s.below(8));
        if (coef[k] != 0) xd += coef[k] * face->basis_d.col(static_cast<Index>(k));
      }
      if (xd.cwiseAbs().maxCoeff() == 0) continue;
    }
    for (std::size_t a = 0; a < draws.size(); ++a) {
      draws[a] = s.draw(model.atoms()[a]);
      vals[a] = draws[a].value;
    }
    const auto& group = model.groups()[s.below(model.groups().size())];
    for (int a : group) vals[static_cast<std::size_t>(a)] = 0;
    f0.noalias() = model.eval(vals) * xd;
    for (std::size_t k = 0; k < group.size(); ++k) {
      vals[static_cast<std::size_t>(group[k])] = 1;
      c.col(static_cast<Index>(k)).noalias() = model.eval(vals) * xd;
      c.col(static_cast<Index>(k)) -= f0;
      vals[static_cast<std::size_t>(group[k])] = 0;
    }
    const auto used = static_cast<Index>(group.size());
    const double scale = std::max({1.0, c.leftCols(used).cwiseAbs().maxCoeff(), f0.cwiseAbs().maxCoeff()});
    // Greedy independent columns in random order (modified Gram-Schmidt, c_solved = Q R);
    // the rest keep their draws.
    solved.clear();
    rhs = -f0;
    s.shuffle(order, group.size());
    for (std::size_t k : order) {
      const auto kk = static_cast<Index>(k);
      col = c.col(kk);
      const auto j = static_cast<Index>(solved.size());
      for (Index i = 0; i < j; ++i) {
        r(i, j) = q.col(i).dot(col);
        col -= r(i, j) * q.col(i);
      }
      const double norm = col.norm();
      if (norm > 1e-9 * std::max(1.0, c.col(kk).norm())) {
        q.col(j) = col / norm;
        r(j, j) = norm;
        solved.push_back(group[k]);
      } else {
        rhs -= c.col(kk) * draws[static_cast<std::size_t>(group[k])].value;
      }
    }
    const auto ns = static_cast<Index>(solved.size());
    if (ns == 0) {
      if (rhs.norm() > cfg.tolerance * scale) continue;
    } else {
      y.head(ns).noalias() = q.leftCols(ns).transpose() * rhs;
      // Least-squares residual is the part of rhs outside span(Q).
      col = rhs;
      col.noalias() -= q.leftCols(ns) * y.head(ns);
      if (col.norm() > 1e-7 * std::max(1.0, rhs.norm())) continue;
      for (Index i = ns - 1; i >= 0; --i) {
        double acc = y(i);
        for (Index k = i + 1; k < ns; ++k) acc -= r(i, k) * g(k);
        g(i) = acc / r(i, i);
      }
    }
    bool plausible = true;
    for (Index k = 0; k < ns && plausible; ++k)
      plausible = float_ok(model.atoms()[static_cast<std::size_t>(solved[static_cast<std::size_t>(k)])], g(k),
                           cfg.tolerance * std::max(1.0, std::fabs(g(k))));
    if (!plausible) continue;
    ++st.float_hits;
    if (!cfg.hint) {
      xq = QVector::Zero(face->basis_q.rows());
      for (std::size_t k = 0; k < coef.size(); ++k)
        if (coef[k] != 0) xq += exact_from_double(coef[k]) * face->basis_q.col(static_cast<Index>(k));
    }
    // Unsolved group members keep their draws inside confirm(); solved ones are recomputed.
    if (auto w = confirm(p, model, draws, solved, xq)) return w;
    ++st.exact_rejections;
  }
  return std::nullopt;
}

}  // namespace inj
