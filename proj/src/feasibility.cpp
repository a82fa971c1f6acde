#include "inj/feasibility.hpp"

#include <cstddef>

namespace inj {

void LinearSystem::add(QVector coeffs, Relation relation, Rational rhs) {
  if (coeffs.size() != variables_) throw ShapeError("LinearSystem::add: coefficient count mismatch");
  constraints_.push_back({std::move(coeffs), relation, std::move(rhs)});
}

void LinearSystem::add_rows(const QMatrix& rows, Relation relation, const QVector& rhs) {
  if (rows.cols() != variables_ || rows.rows() != rhs.size())
    throw ShapeError("LinearSystem::add_rows: shape mismatch");
  for (Index i = 0; i < rows.rows(); ++i) add(rows.row(i).transpose(), relation, rhs(i));
}

namespace {

using Row = std::vector<Rational>;

// Dense phase-1 tableau. Columns: structural, then artificial, then rhs.
class Phase1 {
 public:
  Phase1(std::vector<Row> a, Row b) : m_(a.size()), n_(a.empty() ? 0 : a.front().size()) {
    width_ = n_ + m_ + 1;
    t_.assign(m_, Row(width_));
    cost_.assign(width_, Rational(0));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (b[i] < 0) {
        for (auto& v : a[i]) v = -v;
        b[i] = -b[i];
      }
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = a[i][j];
      t_[i][n_ + i] = 1;
      t_[i][width_ - 1] = b[i];
      basis_[i] = n_ + i;
      for (std::size_t j = 0; j < n_; ++j)
        if (!a[i][j].is_zero()) cost_[j] -= a[i][j];
      cost_[width_ - 1] -= b[i];
    }
  }

  bool run() {
    for (;;) {
      std::size_t enter = width_;
      for (std::size_t j = 0; j + 1 < width_; ++j) {
        if (cost_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == width_) break;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = t_[i][width_ - 1] / t_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      // Phase 1 is bounded below, so an entering column always has a leaving row.
      if (leave == m_) return false;
      pivot(leave, enter);
    }
    return cost_[width_ - 1].is_zero();
  }

  Row solution() const {
    Row x(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = t_[i][width_ - 1];
    return x;
  }

 private:
  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / t_[r][c];
    for (auto& v : t_[r])
      if (!v.is_zero()) v *= inv;
    auto eliminate = [&](Row& row) {
      if (row[c].is_zero()) return;
      const Rational f = row[c];
      for (std::size_t j = 0; j < width_; ++j)
        if (!t_[r][j].is_zero()) row[j] -= f * t_[r][j];
    };
    for (std::size_t i = 0; i < m_; ++i)
      if (i != r) eliminate(t_[i]);
    eliminate(cost_);
    basis_[r] = c;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t width_ = 0;
  std::vector<Row> t_;
  Row cost_;
  std::vector<std::size_t> basis_;
};

}  // namespace

std::optional<QVector> LinearSystem::solve() const {
  // Map each original variable onto non-negative standard-form columns.
  struct Column {
    Index var;
    int scale;
  };
  std::vector<Column> columns;
  std::vector<std::vector<std::size_t>> var_columns(static_cast<std::size_t>(variables_));
  for (Index v = 0; v < variables_; ++v) {
    auto& cols = var_columns[static_cast<std::size_t>(v)];
    switch (signs_[static_cast<std::size_t>(v)]) {
      case VarSign::Free:
        cols.push_back(columns.size());
        columns.push_back({v, 1});
        cols.push_back(columns.size());
        columns.push_back({v, -1});
        break;
      case VarSign::NonNegative:
        cols.push_back(columns.size());
        columns.push_back({v, 1});
        break;
      case VarSign::NonPositive:
        cols.push_back(columns.size());
        columns.push_back({v, -1});
        break;
      case VarSign::Zero:
        break;
    }
  }
  const std::size_t structural = columns.size();
  std::size_t slack_count = 0;
  for (const auto& c : constraints_)
    if (c.relation != Relation::Equal) ++slack_count;

  std::vector<Row> a;
  Row b;
  std::size_t next_slack = structural;
  for (const auto& c : constraints_) {
    Row row(structural + slack_count, Rational(0));
    bool any = false;
    for (std::size_t k = 0; k < structural; ++k) {
      const Rational& coeff = c.coeffs(columns[k].var);
      if (coeff.is_zero()) continue;
      row[k] = columns[k].scale > 0 ? coeff : Rational(-coeff);
      any = true;
    }
    if (c.relation == Relation::AtLeast) row[next_slack++] = -1;
    if (c.relation == Relation::AtMost) row[next_slack++] = 1;
    if (!any) {
      // Constant constraint: decide it directly.
      const Rational& r = c.rhs;
      bool ok = c.relation == Relation::Equal ? r.is_zero()
                : c.relation == Relation::AtLeast ? r <= 0
                                                  : r >= 0;
      if (!ok) return std::nullopt;
      continue;
    }
    a.push_back(std::move(row));
    b.push_back(c.rhs);
  }

  QVector x = QVector::Zero(variables_);
  if (a.empty()) return x;
  Phase1 tableau(std::move(a), std::move(b));
  if (!tableau.run()) return std::nullopt;
  Row s = tableau.solution();
  for (std::size_t k = 0; k < structural; ++k) {
    if (s[k].is_zero()) continue;
    x(columns[k].var) += columns[k].scale > 0 ? s[k] : Rational(-s[k]);
  }
  return x;
}

namespace {

void add_sign_rows(LinearSystem& sys, const QMatrix& map, const SignVector& signs) {
  for (Index i = 0; i < map.rows(); ++i) {
    switch (signs[static_cast<std::size_t>(i)]) {
      case Sign::Plus:
        sys.add(map.row(i).transpose(), Relation::AtLeast, Rational(1));
        break;
      case Sign::Minus:
        sys.add(map.row(i).transpose(), Relation::AtMost, Rational(-1));
        break;
      case Sign::Zero:
        sys.add(map.row(i).transpose(), Relation::Equal, Rational(0));
        break;
    }
  }
}

}  // namespace

std::optional<QVector> strict_sign_feasible(const QMatrix& e, const SignVector& tau,
                                            std::span<const SignConstraint> extra) {
  const Index n = static_cast<Index>(tau.size());
  if (e.rows() > 0 && e.cols() != n) throw ShapeError("strict_sign_feasible: E has wrong column count");
  LinearSystem sys(n);
  for (Index i = 0; i < n; ++i) {
    QVector unit = QVector::Zero(n);
    unit(i) = 1;
    switch (tau[static_cast<std::size_t>(i)]) {
      case Sign::Plus:
        sys.restrict_sign(i, VarSign::NonNegative);
        sys.add(std::move(unit), Relation::AtLeast, Rational(1));
        break;
      case Sign::Minus:
        sys.restrict_sign(i, VarSign::NonPositive);
        sys.add(std::move(unit), Relation::AtMost, Rational(-1));
        break;
      case Sign::Zero:
        sys.restrict_sign(i, VarSign::Zero);
        break;
    }
  }
  if (e.rows() > 0) sys.add_rows(e, Relation::Equal, QVector::Zero(e.rows()));
  for (const auto& c : extra) {
    if (c.map.cols() != n || static_cast<std::size_t>(c.map.rows()) != c.signs.size())
      throw ShapeError("strict_sign_feasible: extra constraint shape mismatch");
    add_sign_rows(sys, c.map, c.signs);
  }
  return sys.solve();
}

}  // namespace inj
