#pragma once

#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

#include "inj/error.hpp"
#include "inj/rational.hpp"

namespace inj {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = Matrix<Rational>;
using QVector = Vector<Rational>;

/// Determinant by Gaussian elimination with largest-magnitude pivoting. Exact
/// for Rational; for double it is the usual partial-pivot LU value.
template <typename Scalar>
Scalar determinant(Matrix<Scalar> m) {
  if (m.rows() != m.cols()) throw ShapeError("determinant of non-square matrix");
  const Index n = m.rows();
  Scalar det(1);
  for (Index k = 0; k < n; ++k) {
    Index pivot = k;
    for (Index i = k + 1; i < n; ++i) {
      if (abs(m(i, k)) > abs(m(pivot, k))) pivot = i;
    }
    if (m(pivot, k) == Scalar(0)) return Scalar(0);
    if (pivot != k) {
      m.row(k).swap(m.row(pivot));
      det = -det;
    }
    det *= m(k, k);
    for (Index i = k + 1; i < n; ++i) {
      if (m(i, k) == Scalar(0)) continue;
      Scalar factor = m(i, k) / m(k, k);
      for (Index j = k + 1; j < n; ++j) m(i, j) -= factor * m(k, j);
    }
  }
  return det;
}

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
  QMatrix reduced;
  std::vector<Index> pivot_cols;
};

Echelon reduced_row_echelon(QMatrix m);

Index rank(const QMatrix& m);

/// Columns form an exact basis of ker(m), each scaled to a primitive integer
/// vector. Zero columns when the kernel is trivial.
QMatrix kernel_basis(const QMatrix& m);

/// Z with full row rank and ker(Z) equal to the column span of `v`.
QMatrix kernel_rep_of_image(const QMatrix& v);

/// A linearly independent subset of the columns of `v` spanning the same space.
QMatrix column_basis(const QMatrix& v);

/// Some x with a x = b, if one exists.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);

bool in_column_span(const QMatrix& v, const QVector& x);

/// Column spans of `a` and `b` coincide.
bool same_column_span(const QMatrix& a, const QMatrix& b);

bool is_zero(const QVector& v);

/// Multiplies `v` by a positive rational so its entries are coprime integers.
QVector primitive(QVector v);

QMatrix identity(Index n);

Matrix<double> to_double(const QMatrix& m);

/// A linear subspace of R^n, held both as a column basis and as the kernel of
/// a full-row-rank matrix.
class Subspace {
 public:
  static Subspace full(Index n);
  static Subspace image_of(const QMatrix& spanning);
  static Subspace kernel_of(const QMatrix& z);

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.cols(); }

  /// Columns form a basis of S.
  const QMatrix& basis() const { return basis_; }
  /// Z with S = ker Z and full row rank.
  const QMatrix& kernel_rep() const { return kernel_rep_; }

  bool contains(const QVector& x) const;

 private:
  Subspace(Index ambient, QMatrix basis, QMatrix kernel_rep)
      : ambient_(ambient), basis_(std::move(basis)), kernel_rep_(std::move(kernel_rep)) {}

  Index ambient_;
  QMatrix basis_;
  QMatrix kernel_rep_;
};

}  // namespace inj
