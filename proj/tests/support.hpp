#pragma once

#include <initializer_list>
#include <string>

#include "inj/classes.hpp"
#include "inj/injectivity.hpp"
#include "inj/linalg.hpp"
#include "inj/matrix_io.hpp"

namespace testing {

inline inj::QMatrix mat(std::size_t rows, std::size_t cols, std::initializer_list<long> values) {
  inj::QMatrix m(static_cast<inj::Index>(rows), static_cast<inj::Index>(cols));
  auto it = values.begin();
  for (inj::Index i = 0; i < m.rows(); ++i)
    for (inj::Index j = 0; j < m.cols(); ++j) m(i, j) = inj::Rational(*it++);
  return m;
}

inline inj::QVector vec(std::initializer_list<long> values) {
  inj::QVector v(static_cast<inj::Index>(values.size()));
  inj::Index i = 0;
  for (long x : values) v(i++) = inj::Rational(x);
  return v;
}

inline inj::QVector vecq(std::initializer_list<const char*> values) {
  inj::QVector v(static_cast<inj::Index>(values.size()));
  inj::Index i = 0;
  for (const char* x : values) v(i++) = inj::parse_rational(x);
  return v;
}

inline inj::SignVector sv(const char* s) { return inj::SignVector::parse(s); }

// Reference classes shared by unit and acceptance tests.
inline inj::QMatrix b22() { return mat(2, 2, {1, 1, 2, 1}); }
inline inj::ClassPtr open_box() {
  return inj::MatrixClass::interval(inj::parse_interval_matrix("(0,inf) (0,inf)\n(0,inf) (0,inf)\n"));
}
inline inj::Subspace im11() { return inj::Subspace::image_of(mat(2, 1, {1, 1})); }
inline inj::ClassPtr lowtri_box() {
  return inj::MatrixClass::interval(inj::parse_interval_matrix("1 0\n(0,inf) (0,inf)\n"));
}
inline inj::ClassPtr lowtri_w() { return inj::MatrixClass::sign_sets(inj::parse_sign_set_matrix("+ 0\n+ +\n")); }
inline inj::ClassPtr narrow_box() {
  return inj::MatrixClass::interval(inj::parse_interval_matrix("(1,13/10) (1,11/10)\n(2,143/50) (1,121/100)\n"));
}
inline inj::QMatrix a24() { return mat(2, 4, {-1, 0, 0, 1, 0, 1, -1, 0}); }
inline inj::ClassPtr box42() {
  return inj::MatrixClass::interval(inj::parse_interval_matrix("1 0\n(0,1) 0\n0 1\n0 (0,1)\n"));
}
inline inj::QMatrix a12() { return mat(1, 2, {1, -1}); }
inline inj::ClassPtr diag_box() { return inj::MatrixClass::interval(inj::parse_interval_matrix("(0,1) 0\n0 1\n")); }
inline inj::Subspace plane_s() { return inj::Subspace::kernel_of(mat(1, 3, {1, -1, 1})); }
inline inj::QMatrix b23() { return mat(2, 3, {1, 1, 0, 0, 0, 1}); }
inline inj::ClassPtr w_times_qb() {
  return inj::MatrixClass::product(inj::MatrixClass::sign_pattern(inj::parse_sign_set_matrix("+ -\n+ +\n")),
                                   inj::MatrixClass::scaled(b23()));
}
inline inj::ClassPtr w_h() { return inj::MatrixClass::sign_sets(inj::parse_sign_set_matrix("+ + -\n+ + +\n")); }

inline inj::Problem problem(inj::ClassPtr c, inj::Subspace s) { return inj::Problem{std::move(c), std::move(s)}; }
inline inj::Problem problem(inj::ClassPtr c, inj::Subspace s, inj::QMatrix left) {
  return inj::Problem{std::move(c), std::move(s), std::move(left)};
}

}  // namespace testing
