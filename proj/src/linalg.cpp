#include "inj/linalg.hpp"

#include <numeric>

namespace inj {

Echelon reduced_row_echelon(QMatrix m) {
  Echelon out;
  const Index rows = m.rows();
  const Index cols = m.cols();
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index pivot = -1;
    for (Index i = r; i < rows; ++i) {
      if (!m(i, c).is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r) m.row(r).swap(m.row(pivot));
    const Rational inv = 1 / m(r, c);
    for (Index j = c; j < cols; ++j) m(r, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Rational f = m(i, c);
      for (Index j = c; j < cols; ++j) {
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
      }
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

Index rank(const QMatrix& m) { return static_cast<Index>(reduced_row_echelon(m).pivot_cols.size()); }

QVector primitive(QVector v) {
  Integer lcm_den = 1;
  for (Index i = 0; i < v.size(); ++i) {
    Integer d = boost::multiprecision::denominator(v(i));
    lcm_den = boost::multiprecision::lcm(lcm_den, d);
  }
  Integer g = 0;
  for (Index i = 0; i < v.size(); ++i) {
    Integer num = boost::multiprecision::numerator(v(i) * Rational(lcm_den));
    g = boost::multiprecision::gcd(g, num);
  }
  if (g == 0) return v;
  const Rational scale = Rational(lcm_den) / Rational(abs(g));
  for (Index i = 0; i < v.size(); ++i) v(i) *= scale;
  return v;
}

QMatrix kernel_basis(const QMatrix& m) {
  const Index n = m.cols();
  Echelon e = reduced_row_echelon(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index c : e.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Index> free_cols;
  for (Index c = 0; c < n; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);

  QMatrix basis(n, static_cast<Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    QVector v = QVector::Zero(n);
    v(free_cols[k]) = 1;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
      v(e.pivot_cols[r]) = -e.reduced(static_cast<Index>(r), free_cols[k]);
    basis.col(static_cast<Index>(k)) = primitive(std::move(v));
  }
  return basis;
}

QMatrix kernel_rep_of_image(const QMatrix& v) {
  QMatrix k = kernel_basis(v.transpose());
  return k.transpose();
}

QMatrix column_basis(const QMatrix& v) {
  Echelon e = reduced_row_echelon(v);
  QMatrix out(v.rows(), static_cast<Index>(e.pivot_cols.size()));
  for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) out.col(static_cast<Index>(k)) = v.col(e.pivot_cols[k]);
  return out;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  if (a.rows() != b.size()) throw ShapeError("solve: right-hand side length mismatch");
  QMatrix aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  Echelon e = reduced_row_echelon(aug);
  QVector x = QVector::Zero(a.cols());
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
    if (e.pivot_cols[r] == a.cols()) return std::nullopt;
    x(e.pivot_cols[r]) = e.reduced(static_cast<Index>(r), a.cols());
  }
  return x;
}

bool in_column_span(const QMatrix& v, const QVector& x) { return solve(v, x).has_value(); }

bool same_column_span(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) return false;
  for (Index j = 0; j < b.cols(); ++j)
    if (!in_column_span(a, b.col(j))) return false;
  for (Index j = 0; j < a.cols(); ++j)
    if (!in_column_span(b, a.col(j))) return false;
  return true;
}

bool is_zero(const QVector& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) return false;
  return true;
}

QMatrix identity(Index n) {
  QMatrix m = QMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix<double> to_double(const QMatrix& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).convert_to<double>();
  return out;
}

Subspace Subspace::full(Index n) { return Subspace(n, identity(n), QMatrix(0, n)); }

Subspace Subspace::image_of(const QMatrix& spanning) {
  QMatrix basis = column_basis(spanning);
  QMatrix z = kernel_rep_of_image(basis);
  return Subspace(spanning.rows(), std::move(basis), std::move(z));
}

Subspace Subspace::kernel_of(const QMatrix& z) {
  QMatrix basis = kernel_basis(z);
  // Keep the caller's rows (their orientation fixes determinant signs), dropping dependent ones.
  QMatrix rep = column_basis(z.transpose()).transpose();
  if (rep.rows() == 0) rep = QMatrix(0, z.cols());
  return Subspace(z.cols(), std::move(basis), std::move(rep));
}

bool Subspace::contains(const QVector& x) const {
  if (x.size() != ambient_) throw ShapeError("Subspace::contains: dimension mismatch");
  return is_zero(kernel_rep_ * x);
}

}  // namespace inj
