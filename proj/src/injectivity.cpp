#include "inj/injectivity.hpp"

#include <chrono>

#include "inj/error.hpp"
#include "inj/oracle.hpp"
#include "internal.hpp"

namespace inj {

ClassPtr Problem::effective_class() const { return left ? MatrixClass::product(*left, cls) : cls; }

void Problem::validate() const {
  if (!cls) throw Error("problem has no matrix class");
  if (!full_dimensional_domain)
    throw Unsupported("the domain must have non-empty interior (only then does dX ∩ S reduce to S*)");
  if (static_cast<Index>(cls->cols()) != subspace.ambient_dim())
    throw ShapeError("class has " + std::to_string(cls->cols()) + " columns but S lives in R^" +
                     std::to_string(subspace.ambient_dim()));
  if (left && left->cols() != static_cast<Index>(cls->rows()))
    throw ShapeError("left matrix has " + std::to_string(left->cols()) + " columns but the class has " +
                     std::to_string(cls->rows()) + " rows");
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Injective: return "INJECTIVE";
    case Status::NotInjective: return "NOT_INJECTIVE";
    case Status::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::SignRoute: return "SIGN_ROUTE";
    case Method::DetRoute: return "DET_ROUTE";
    case Method::PatternUnion: return "PATTERN_UNION";
  }
  return "?";
}

namespace {

constexpr std::size_t kPatternUnionLimit = 256;

Verdict dispatch(const Problem& p, const CheckOptions& opt);

Verdict fallback(const Problem& p, const CheckOptions& opt, Verdict v, const std::string& reason) {
  v.diagnostics.note = reason;
  if (opt.fallback_trials > 0) {
    OracleConfig cfg;
    cfg.trials = opt.fallback_trials;
    cfg.seed = opt.fallback_seed;
    if (auto w = falsify(p, cfg)) {
      v.status = Status::NotInjective;
      v.witness = std::move(*w);
      v.diagnostics.witness_source = "oracle";
      return v;
    }
  }
  v.status = Status::Inconclusive;
  return v;
}

const SignSetsClass* nonsingleton_sign_sets(const Problem& p) {
  const auto d = detail::decompose(p);
  if (!d) return nullptr;
  const auto* s = d->inner->as<SignSetsClass>();
  if (!s) return nullptr;
  for (const auto& e : s->sets.data())
    if (!e.is_singleton()) return s;
  return nullptr;
}

Verdict sign_or_fallback(const Problem& p, const CheckOptions& opt, Verdict v, const std::string& reason) {
  if (auto sv = detail::sign_route(p, opt.caps)) return std::move(*sv);
  return fallback(p, opt, std::move(v), reason);
}

Verdict det_route(const Problem& p, const CheckOptions& opt) {
  const ClassPtr aug = augment_with_kernel_rep(p.subspace, p.effective_class());
  DetAnalysis da = det_sign_analysis(*aug, opt.caps);
  Verdict v;
  v.method = Method::DetRoute;
  if (const auto* t = std::get_if<MonomialTable>(&da.table)) v.diagnostics.candidates = t->terms.size();
  else v.diagnostics.candidates = std::get<VertexTable>(da.table).vertices.size();
  switch (da.sign) {
    case DetSign::Positive:
    case DetSign::Negative:
      v.status = Status::Injective;
      v.certificate = std::move(da);
      return v;
    case DetSign::Zero:
    case DetSign::Mixed: {
      const auto* t = std::get_if<MonomialTable>(&da.table);
      if (da.sign == DetSign::Zero || !t || t->zero_attainable_if_mixed()) {
        v.status = Status::NotInjective;
        v.witness = build_witness(p, da);
        v.diagnostics.witness_source = t ? "det-table" : "sign-route";
        v.certificate = std::move(da);
        return v;
      }
      v.certificate = std::move(da);
      const std::string why = "mixed determinant signs with repeated parameters: a zero is not guaranteed";
      if (opt.route == RoutePreference::Determinant) return fallback(p, opt, std::move(v), why);
      if (auto sv = detail::sign_route(p, opt.caps)) return std::move(*sv);
      return fallback(p, opt, std::move(v), why);
    }
  }
  return v;
}

Verdict pattern_union(const Problem& p, const CheckOptions& opt) {
  const auto d = detail::decompose(p);
  const SignSetsClass* sets = d ? d->inner->as<SignSetsClass>() : nullptr;
  if (!sets) throw Unsupported("pattern union needs a sign-set class, optionally under a fixed left matrix");
  const ClassPtr eff = p.effective_class();
  if (static_cast<Index>(eff->rows()) != p.subspace.dim())
    throw Unsupported("pattern union is implemented for the square case only");
  Verdict v;
  v.method = Method::PatternUnion;
  std::vector<PatternCertificate> certs;
  bool inconclusive = false;
  CheckOptions sub = opt;
  sub.route = RoutePreference::Determinant;
  for (auto& pattern : enumerate_patterns(sets->sets, opt.caps.max_patterns)) {
    ++v.diagnostics.candidates;
    Problem q{MatrixClass::sign_pattern(pattern), p.subspace, d->left, p.full_dimensional_domain};
    Verdict pv = dispatch(q, sub);
    if (pv.status == Status::NotInjective) {
      v.status = Status::NotInjective;
      v.witness = std::move(pv.witness);
      v.diagnostics.witness_source = pv.diagnostics.witness_source;
      v.diagnostics.note = "pattern " + std::to_string(v.diagnostics.candidates) + " is singular on S";
      if (!verify_witness(*v.witness, p)) throw Error("pattern union: witness does not transfer to the sign-set class");
      return v;
    }
    if (pv.status == Status::Inconclusive) {
      inconclusive = true;
      continue;
    }
    certs.push_back({std::move(pattern), std::get<DetAnalysis>(*pv.certificate)});
  }
  if (inconclusive) {
    v.status = Status::Inconclusive;
    v.diagnostics.note = "some sign pattern was inconclusive";
    return v;
  }
  v.status = Status::Injective;
  v.certificate = std::move(certs);
  return v;
}

Verdict dispatch(const Problem& p, const CheckOptions& opt) {
  const ClassPtr eff = p.effective_class();
  const Index s = p.subspace.dim();
  const auto r = static_cast<Index>(eff->rows());
  if (s == 0) {
    Verdict v;
    v.status = Status::Injective;
    v.method = Method::SignRoute;
    v.certificate = SignSearchTranscript{"trivial-subspace", {}, {}, 0};
    v.diagnostics.note = "S = {0}";
    return v;
  }
  if (r < s) {
    // [Z; B] has fewer rows than columns, so every member is singular on S.
    Verdict v;
    v.status = Status::NotInjective;
    v.method = Method::DetRoute;
    Member m = canonical_member(*eff);
    const QMatrix& z = p.subspace.kernel_rep();
    QMatrix stacked(z.rows() + r, z.cols());
    stacked.topRows(z.rows()) = z;
    stacked.bottomRows(r) = m.value;
    v.witness = SingularWitness{std::move(m), kernel_basis(stacked).col(0), std::nullopt};
    detail::attach_lift(p, *v.witness);
    v.diagnostics.witness_source = "dimension";
    v.diagnostics.note = "fewer rows than dim S";
    if (!verify_witness(*v.witness, p)) throw Error("dimension witness failed verification");
    return v;
  }
  switch (opt.route) {
    case RoutePreference::Sign: {
      auto v = detail::sign_route(p, opt.caps);
      if (!v) throw Unsupported("no sign route for class " + eff->describe());
      return std::move(*v);
    }
    case RoutePreference::PatternUnion: return pattern_union(p, opt);
    case RoutePreference::Determinant:
      if (r != s) throw Unsupported("determinant route needs rows(class) = dim S");
      return det_route(p, opt);
    case RoutePreference::Auto: break;
  }
  Verdict v;
  if (r > s) return sign_or_fallback(p, opt, v, "no exact route for class " + eff->describe());
  if (const auto* sets = nonsingleton_sign_sets(p)) {
    if (pattern_count(sets->sets) <= kPatternUnionLimit) return pattern_union(p, opt);
    return sign_or_fallback(p, opt, v, "no exact route for class " + eff->describe());
  }
  try {
    return det_route(p, opt);
  } catch (const Unsupported& e) {
    return sign_or_fallback(p, opt, v, e.what());
  }
}

bool same_table(const DetAnalysis& a, const DetAnalysis& b) {
  if (a.sign != b.sign || a.table.index() != b.table.index()) return false;
  if (const auto* ta = std::get_if<MonomialTable>(&a.table)) {
    const auto& tb = std::get<MonomialTable>(b.table);
    return ta->terms == tb.terms && ta->multilinear == tb.multilinear && ta->homogeneous == tb.homogeneous &&
           ta->distinct_supports == tb.distinct_supports && ta->free_positive_params == tb.free_positive_params;
  }
  const auto& va = std::get<VertexTable>(a.table);
  const auto& vb = std::get<VertexTable>(b.table);
  if (va.atoms.size() != vb.atoms.size() || va.vertices.size() != vb.vertices.size()) return false;
  for (std::size_t k = 0; k < va.atoms.size(); ++k)
    if (va.atoms[k].param != vb.atoms[k].param || !(va.atoms[k].domain == vb.atoms[k].domain)) return false;
  for (std::size_t k = 0; k < va.vertices.size(); ++k) {
    const auto& x = va.vertices[k];
    const auto& y = vb.vertices[k];
    if (x.at_upper != y.at_upper || x.value != y.value || x.excluded != y.excluded) return false;
  }
  return va.min == vb.min && va.max == vb.max;
}

bool strict(DetSign s) { return s == DetSign::Positive || s == DetSign::Negative; }

}  // namespace

Verdict check_injectivity(const Problem& p, const CheckOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  p.validate();
  Verdict v = dispatch(p, opt);
  v.diagnostics.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return v;
}

bool verify_certificate(const Verdict& v, const Problem& p) {
  try {
    p.validate();
    if (v.status == Status::NotInjective) return v.witness && verify_witness(*v.witness, p);
    if (v.status != Status::Injective || !v.certificate) return false;
    if (const auto* da = std::get_if<DetAnalysis>(&*v.certificate)) {
      if (!strict(da->sign)) return false;
      const ClassPtr aug = augment_with_kernel_rep(p.subspace, p.effective_class());
      return same_table(*da, det_sign_analysis(*aug));
    }
    if (const auto* certs = std::get_if<std::vector<PatternCertificate>>(&*v.certificate)) {
      const auto d = detail::decompose(p);
      if (!d || !d->inner->as<SignSetsClass>()) return false;
      const auto patterns = enumerate_patterns(d->inner->as<SignSetsClass>()->sets);
      if (patterns.size() != certs->size()) return false;
      for (std::size_t k = 0; k < patterns.size(); ++k) {
        const auto& c = (*certs)[k];
        if (!(c.pattern == patterns[k]) || !strict(c.analysis.sign)) return false;
        const ClassPtr eff = d->left ? MatrixClass::product(*d->left, MatrixClass::sign_pattern(c.pattern))
                                     : MatrixClass::sign_pattern(c.pattern);
        if (!same_table(c.analysis, det_sign_analysis(*augment_with_kernel_rep(p.subspace, eff)))) return false;
      }
      return true;
    }
    const auto& tr = std::get<SignSearchTranscript>(*v.certificate);
    if (tr.route == "trivial-subspace") return p.subspace.dim() == 0;
    auto again = detail::sign_route(p, Caps{});
    if (!again || again->status != Status::Injective) return false;
    const auto& tr2 = std::get<SignSearchTranscript>(*again->certificate);
    return tr.route == tr2.route && tr.subspace_signs == tr2.subspace_signs && tr.target_signs == tr2.target_signs;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace inj
