#include <set>

#include "inj/error.hpp"
#include "inj/injectivity.hpp"

namespace inj {

std::string to_string(DetSign s) {
  switch (s) {
    case DetSign::Positive: return "POS";
    case DetSign::Negative: return "NEG";
    case DetSign::Zero: return "ZERO";
    case DetSign::Mixed: return "MIXED";
  }
  return "?";
}

namespace {

DetAnalysis monomial_analysis(const SymbolicView& view, const Caps& caps) {
  const Polynomial det = symbolic_determinant(view.entries, caps.max_monomials);
  MonomialTable t;
  std::set<std::vector<Param>> supports;
  std::optional<int> degree;
  bool any_pos = false;
  bool any_neg = false;
  for (const auto& [m, c] : det.terms()) {
    t.terms.emplace_back(m, c);
    int d = 0;
    std::vector<Param> support;
    for (const auto& [p, e] : m) {
      d += e;
      support.push_back(p);
    }
    if (degree && *degree != d) t.homogeneous = false;
    degree = d;
    if (!is_multilinear(m)) t.multilinear = false;
    if (!supports.insert(support).second) t.distinct_supports = false;
    (c > 0 ? any_pos : any_neg) = true;
  }
  for (const auto& pd : view.params)
    if (pd.param.kind == ParamKind::IntervalAtom) t.free_positive_params = false;
  DetAnalysis out;
  out.sign = t.terms.empty() ? DetSign::Zero
             : any_pos && any_neg ? DetSign::Mixed
             : any_pos          ? DetSign::Positive
                                : DetSign::Negative;
  out.table = std::move(t);
  return out;
}

// Every atom must enter det affinely: degree one, all occurrences in one row or one column.
void require_affine_atoms(const SymbolicView& view) {
  for (const auto& pd : view.params) {
    std::set<std::size_t> rows, cols;
    for (std::size_t i = 0; i < view.entries.rows(); ++i)
      for (std::size_t j = 0; j < view.entries.cols(); ++j) {
        const int d = view.entries(i, j).degree_in(pd.param);
        if (d == 0) continue;
        if (d > 1) throw Unsupported("vertex route: atom " + pd.param.name() + " is not affine in an entry");
        rows.insert(i);
        cols.insert(j);
      }
    if (rows.size() > 1 && cols.size() > 1)
      throw Unsupported("vertex route: atom " + pd.param.name() + " spans several rows and columns");
  }
}

// Zero on the face that frees every coordinate of v sitting at an open endpoint.
bool zero_face(const VertexTable& t, std::size_t v) {
  std::size_t free_mask = 0;
  for (std::size_t k = 0; k < t.atoms.size(); ++k) {
    const auto& d = t.atoms[k].domain;
    if (t.vertices[v].at_upper[k] ? d.upper_open() : d.lower_open()) free_mask |= std::size_t{1} << k;
  }
  // Enumerate submasks of free_mask.
  for (std::size_t sub = free_mask;; sub = (sub - 1) & free_mask) {
    if (!t.vertices[(v & ~free_mask) | sub].value.is_zero()) return false;
    if (sub == 0) break;
  }
  return true;
}

DetAnalysis vertex_analysis(const MatrixClass& c, const SymbolicView& view, const Caps& caps) {
  require_affine_atoms(view);
  VertexTable t;
  t.atoms = view.params;
  for (const auto& pd : t.atoms)
    if (!pd.domain.is_bounded()) throw Unsupported("vertex route: unbounded interval atom " + pd.param.name());
  const std::size_t k = t.atoms.size();
  if (k >= 63 || (std::size_t{1} << k) > caps.max_vertices)
    throw CapExceeded("vertex enumeration", k >= 63 ? SIZE_MAX : (std::size_t{1} << k), caps.max_vertices);
  const std::size_t count = std::size_t{1} << k;
  t.vertices.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    VertexRecord rec;
    rec.at_upper.resize(k);
    Assignment a;
    for (std::size_t i = 0; i < k; ++i) {
      const bool up = (mask >> i) & 1U;
      const auto& d = t.atoms[i].domain;
      rec.at_upper[i] = up;
      a[t.atoms[i].param] = up ? *d.upper() : *d.lower();
      if (up ? d.upper_open() : d.lower_open()) rec.excluded = true;
    }
    rec.value = determinant(realize(c, a).value);
    if (mask == 0 || rec.value < t.min) t.min = rec.value;
    if (mask == 0 || rec.value > t.max) t.max = rec.value;
    t.vertices.push_back(std::move(rec));
  }
  DetAnalysis out;
  if (t.min.is_zero() && t.max.is_zero()) {
    out.sign = DetSign::Zero;
  } else if (t.min >= 0 || t.max <= 0) {
    bool attained = false;
    for (std::size_t v = 0; v < count && !attained; ++v)
      attained = t.vertices[v].value.is_zero() && zero_face(t, v);
    out.sign = attained ? DetSign::Mixed : (t.min >= 0 ? DetSign::Positive : DetSign::Negative);
  } else {
    out.sign = DetSign::Mixed;
  }
  out.table = std::move(t);
  return out;
}

}  // namespace

DetAnalysis det_sign_analysis(const MatrixClass& c, const Caps& caps) {
  if (c.rows() != c.cols()) throw ShapeError("det_sign_analysis: class is not square");
  const SymbolicView view = symbolic_view(c);
  bool interval_atoms = false;
  bool positive_atoms = false;
  for (const auto& pd : view.params) (pd.param.kind == ParamKind::IntervalAtom ? interval_atoms : positive_atoms) = true;
  if (interval_atoms && positive_atoms) throw Unsupported("det route: interval atoms mixed with scaling parameters");
  if (interval_atoms) return vertex_analysis(c, view, caps);
  return monomial_analysis(view, caps);
}

}  // namespace inj
