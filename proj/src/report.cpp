#include "inj/report.hpp"

namespace inj {

Json matrix_json(const QMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const QVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

namespace {

template <typename T, typename F>
Json grid_json(const Grid<T>& g, F&& f) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < g.cols(); ++j) row.push_back(f(g(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json sign_sets_json(const SignSetMatrix& w) {
  return grid_json(w, [](const SignSet& s) { return s.token(); });
}

Json member_json(const Member& m) {
  Json j;
  j["value"] = matrix_json(m.value);
  if (m.row_scale.size() > 0 || m.col_scale.size() > 0) {
    j["kappa"] = vector_json(m.row_scale);
    j["lambda"] = vector_json(m.col_scale);
  }
  if (!m.factors.empty()) {
    Json f = Json::array();
    for (const auto& x : m.factors) f.push_back(member_json(x));
    j["factors"] = std::move(f);
  }
  return j;
}

Json signs_json(const std::vector<SignVector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(v.str());
  return out;
}

Json certificate_json(const PositivityCertificate& c) {
  if (const auto* d = std::get_if<DetAnalysis>(&c)) return analysis_json(*d);
  if (const auto* ps = std::get_if<std::vector<PatternCertificate>>(&c)) {
    Json j;
    j["kind"] = "pattern_union";
    Json list = Json::array();
    for (const auto& p : *ps) {
      Json e;
      e["pattern"] = sign_sets_json(p.pattern);
      e["analysis"] = analysis_json(p.analysis);
      list.push_back(std::move(e));
    }
    j["patterns"] = std::move(list);
    return j;
  }
  const auto& t = std::get<SignSearchTranscript>(c);
  Json j;
  j["kind"] = "sign_search";
  j["route"] = t.route;
  j["subspace_signs"] = signs_json(t.subspace_signs);
  j["target_signs"] = signs_json(t.target_signs);
  j["checks"] = t.checks;
  return j;
}

}  // namespace

Json class_json(const MatrixClass& c) {
  Json j;
  if (const auto* p = c.as<SignPatternClass>()) {
    j["type"] = "SignPattern";
    j["pattern"] = sign_sets_json(p->pattern);
  } else if (const auto* p = c.as<SignSetsClass>()) {
    j["type"] = "SignSets";
    j["sets"] = sign_sets_json(p->sets);
  } else if (const auto* p = c.as<IntervalClass>()) {
    j["type"] = "Interval";
    j["box"] = grid_json(p->box, [](const IntervalEntry& e) { return e.str(); });
  } else if (const auto* p = c.as<ScaledClass>()) {
    j["type"] = "Scaled";
    j["B"] = matrix_json(p->base);
  } else if (const auto* p = c.as<ProductClass>()) {
    j["type"] = "Product";
    if (const auto* m = std::get_if<QMatrix>(&p->left))
      j["left"] = matrix_json(*m);
    else
      j["left"] = class_json(*std::get<ClassPtr>(p->left));
    j["right"] = class_json(*p->right);
  } else {
    const auto& a = std::get<AugmentedClass>(c.variant());
    j["type"] = "Augmented";
    j["Z"] = matrix_json(a.top);
    j["inner"] = class_json(*a.inner);
  }
  return j;
}

Json problem_json(const Problem& p) {
  Json j;
  j["class"] = class_json(*p.cls);
  j["left"] = p.left ? matrix_json(*p.left) : Json(nullptr);
  Json s;
  s["ambient_dim"] = p.subspace.ambient_dim();
  s["dim"] = p.subspace.dim();
  s["basis"] = matrix_json(p.subspace.basis());
  s["kernel_rep"] = matrix_json(p.subspace.kernel_rep());
  j["S"] = std::move(s);
  j["domain"] = p.full_dimensional_domain ? "full-dimensional (non-empty interior)" : "lower-dimensional";
  return j;
}

Json witness_json(const SingularWitness& w) {
  Json j;
  j["kind"] = "singular_witness";
  j["B"] = matrix_json(w.member.value);
  j["z"] = vector_json(w.z);
  j["member"] = member_json(w.member);
  if (w.lift) {
    Json l;
    l["kappa"] = w.lift->kappa;
    l["x"] = w.lift->x;
    l["y"] = w.lift->y;
    l["difference_residual"] = w.lift->difference_residual;
    l["image_residual"] = w.lift->image_residual;
    j["monomial_lift"] = std::move(l);
  }
  return j;
}

Json analysis_json(const DetAnalysis& d) {
  Json j;
  j["sign"] = to_string(d.sign);
  if (const auto* t = std::get_if<MonomialTable>(&d.table)) {
    j["kind"] = "monomial_table";
    Json terms = Json::array();
    for (const auto& [m, c] : t->terms) {
      Json e;
      e["coefficient"] = to_string(c);
      e["monomial"] = to_string(m);
      terms.push_back(std::move(e));
    }
    j["terms"] = std::move(terms);
    j["homogeneous"] = t->homogeneous;
    j["multilinear"] = t->multilinear;
    j["distinct_supports"] = t->distinct_supports;
    j["zero_attainable_if_mixed"] = t->zero_attainable_if_mixed();
  } else {
    const auto& vt = std::get<VertexTable>(d.table);
    j["kind"] = "vertex_table";
    Json atoms = Json::array();
    for (const auto& a : vt.atoms) {
      Json e;
      e["name"] = a.param.name();
      e["domain"] = a.domain.str();
      atoms.push_back(std::move(e));
    }
    j["atoms"] = std::move(atoms);
    Json vs = Json::array();
    for (const auto& v : vt.vertices) {
      Json e;
      std::string at;
      for (bool u : v.at_upper) at += u ? 'U' : 'L';
      e["at"] = at;
      e["value"] = to_string(v.value);
      e["excluded"] = v.excluded;
      vs.push_back(std::move(e));
    }
    j["vertices"] = std::move(vs);
    j["min"] = to_string(vt.min);
    j["max"] = to_string(vt.max);
  }
  return j;
}

Json verdict_json(const Verdict& v, const Problem& p, const ReportOptions& opt) {
  Json j;
  j["status"] = to_string(v.status);
  j["method"] = to_string(v.method);
  if (v.status == Status::NotInjective && v.witness)
    j["certificate"] = witness_json(*v.witness);
  else if (v.status == Status::Injective && v.certificate)
    j["certificate"] = certificate_json(*v.certificate);
  else
    j["certificate"] = nullptr;
  Json d;
  d["candidates"] = v.diagnostics.candidates;
  if (!v.diagnostics.witness_source.empty()) d["witness_source"] = v.diagnostics.witness_source;
  if (!v.diagnostics.note.empty()) d["note"] = v.diagnostics.note;
  if (v.status == Status::Inconclusive && v.certificate) d["evidence"] = certificate_json(*v.certificate);
  Json caps;
  caps["max_sign_dim"] = opt.caps.max_sign_dim;
  caps["max_vertices"] = opt.caps.max_vertices;
  caps["max_monomials"] = opt.caps.max_monomials;
  caps["max_patterns"] = opt.caps.max_patterns;
  d["caps"] = std::move(caps);
  if (opt.timings) d["wall_seconds"] = v.diagnostics.wall_seconds;
  if (!opt.notes.empty()) d["notes"] = opt.notes;
  j["diagnostics"] = std::move(d);
  j["echo"] = problem_json(p);
  return j;
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace inj
