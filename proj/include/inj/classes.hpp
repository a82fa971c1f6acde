#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "inj/grid.hpp"
#include "inj/intervals.hpp"
#include "inj/linalg.hpp"
#include "inj/polynomial.hpp"
#include "inj/signs.hpp"

namespace inj {

using SignSetMatrix = Grid<SignSet>;

class MatrixClass;
using ClassPtr = std::shared_ptr<const MatrixClass>;

/// Q(W): all matrices with sign pattern W (singleton entries).
struct SignPatternClass {
  SignSetMatrix pattern;
};

/// Q(𝒲): all matrices whose sign pattern lies entry-wise in the given sign sets.
struct SignSetsClass {
  SignSetMatrix sets;
};

/// Q(D): all matrices with entries in the given intervals.
struct IntervalClass {
  IntervalBox box;
};

/// q(B) = {diag(κ) B diag(λ) : κ, λ > 0}.
struct ScaledClass {
  QMatrix base;
};

/// {L R : L in left, R in right}; the left factor may be a fixed matrix.
struct ProductClass {
  std::variant<QMatrix, ClassPtr> left;
  ClassPtr right;
};

/// {[Z; B] : B in inner}.
struct AugmentedClass {
  QMatrix top;
  ClassPtr inner;
};

/// An immutable description of a set of real matrices.
class MatrixClass {
 public:
  using Variant =
      std::variant<SignPatternClass, SignSetsClass, IntervalClass, ScaledClass, ProductClass, AugmentedClass>;

  static ClassPtr sign_pattern(SignSetMatrix pattern);
  static ClassPtr sign_sets(SignSetMatrix sets);
  static ClassPtr interval(IntervalBox box);
  static ClassPtr scaled(QMatrix base);
  static ClassPtr product(QMatrix left, ClassPtr right);
  static ClassPtr product(ClassPtr left, ClassPtr right);
  static ClassPtr augmented(QMatrix top, ClassPtr inner);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Variant& variant() const { return v_; }

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&v_);
  }

  /// Short structural description, e.g. `Product(matrix 2x4, Interval 4x2)`.
  std::string describe() const;

 private:
  MatrixClass(Variant v, std::size_t rows, std::size_t cols) : v_(std::move(v)), rows_(rows), cols_(cols) {}

  Variant v_;
  std::size_t rows_;
  std::size_t cols_;
};

/// Sign-set matrix to the equivalent interval box (the D_𝒲 table).
IntervalEntry interval_of(SignSet s);
IntervalBox d_of_signsets(const SignSetMatrix& w);

/// Product of the entry cardinalities.
std::size_t pattern_count(const SignSetMatrix& w);

/// Every sign pattern W with W_ij in 𝒲_ij, in row-major lexicographic order.
/// Throws CapExceeded when there are more than `cap`.
std::vector<SignSetMatrix> enumerate_patterns(const SignSetMatrix& w, std::size_t cap = 1'000'000);

SignSetMatrix sign_pattern_of(const QMatrix& m);

/// Augmented(Z, inner) for a kernel representation Z of S.
ClassPtr augment_with_kernel_rep(const Subspace& s, ClassPtr inner);

/// Domain of a parameter: κ, λ, μ range over (0, inf); ν over its interval.
struct ParamDomain {
  Param param;
  IntervalEntry domain;
};

/// Entries of a class as polynomials in its parameters.
struct SymbolicView {
  Grid<Polynomial> entries;
  std::vector<ParamDomain> params;
};

/// Symbolic entries for SignPattern, Interval (no punctured entries), Scaled,
/// Product and Augmented classes. SignSets with non-singleton entries throw
/// Unsupported. A Scaled factor right of a sign-pattern/sign-set factor has its
/// κ absorbed, since Q(W) diag(κ) = Q(W).
SymbolicView symbolic_view(const MatrixClass& c);

/// Entries of left * right.
Grid<Polynomial> symbolic_product(const QMatrix& left, const ClassPtr& right);
Grid<Polynomial> symbolic_product(const ClassPtr& left, const ClassPtr& right);

/// A concrete element of a class together with the factor data that proves membership.
struct Member {
  QMatrix value;
  QVector row_scale;           // Scaled: κ
  QVector col_scale;           // Scaled: λ
  std::vector<Member> factors;  // Product: [left member,] right member; Augmented: inner member
};

/// The member obtained by substituting `values` into the symbolic view.
Member realize(const MatrixClass& c, const Assignment& values);

/// Exact membership check, honouring open endpoints.
bool is_member(const MatrixClass& c, const Member& m);

/// A fixed member built from interior points (all κ, λ, μ set to 1).
Member canonical_member(const MatrixClass& c);

}  // namespace inj
