#include <doctest.h>

#include <random>

#include "inj/feasibility.hpp"
#include "support.hpp"

using namespace inj;
using testing::mat;
using testing::vec;

namespace {

// Leibniz formula over all permutations.
Rational leibniz(const QMatrix& m) {
  const Index n = m.rows();
  std::vector<Index> p(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
    Rational term = inversions % 2 ? -1 : 1;
    for (Index i = 0; i < n; ++i) term *= m(i, p[static_cast<std::size_t>(i)]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

QMatrix random_matrix(std::mt19937_64& rng, Index r, Index c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  QMatrix m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("determinant examples") {
  CHECK(determinant(mat(2, 2, {1, 1, 2, 1})) == -1);
  CHECK(determinant(identity(4)) == 1);
  CHECK(determinant(mat(3, 3, {1, -1, 1, 1, 1, -1, 1, 1, 1})) == 4);
  CHECK_THROWS_AS(determinant(mat(1, 2, {1, 2})), ShapeError);
}

TEST_CASE("determinant agrees with the Leibniz expansion") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    Index n = 1 + t % 5;
    QMatrix m = random_matrix(rng, n, n, -3, 3);
    CHECK(determinant(m) == leibniz(m));
  }
}

TEST_CASE("kernel examples") {
  QMatrix k = kernel_basis(mat(1, 2, {1, -1}));
  REQUIRE(k.cols() == 1);
  CHECK(same_column_span(k, mat(2, 1, {1, 1})));
  CHECK(kernel_basis(identity(2)).cols() == 0);
  CHECK(same_column_span(kernel_basis(mat(2, 2, {1, 1, 2, 2})), mat(2, 1, {1, -1})));
}

TEST_CASE("kernel representations of images") {
  QMatrix z = kernel_rep_of_image(mat(2, 1, {1, 1}));
  REQUIRE(z.rows() == 1);
  CHECK(z(0, 0) == -z(0, 1));
  CHECK(kernel_rep_of_image(identity(3)).rows() == 0);
  QMatrix z3 = kernel_rep_of_image(mat(3, 2, {1, 0, 1, 1, 0, 1}));
  REQUIRE(z3.rows() == 1);
  CHECK(same_column_span(z3.transpose(), mat(3, 1, {1, -1, 1})));
}

TEST_CASE("kernel basis is a basis of the null space") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 150; ++t) {
    Index r = 1 + t % 4, c = 1 + (t / 4) % 5;
    QMatrix m = random_matrix(rng, r, c, -2, 2);
    QMatrix k = kernel_basis(m);
    CHECK(k.cols() == c - rank(m));
    CHECK((m * k).isZero());
    if (k.cols() > 0) CHECK(rank(k) == k.cols());
    QMatrix z = kernel_rep_of_image(m.transpose());
    CHECK((z * m.transpose()).isZero());
    CHECK(z.rows() == c - rank(m));
  }
}

TEST_CASE("subspace membership") {
  Subspace s = Subspace::kernel_of(mat(1, 3, {1, -1, 1}));
  CHECK(s.dim() == 2);
  CHECK(s.contains(vec({1, 1, 0})));
  CHECK_FALSE(s.contains(vec({1, 0, 0})));
  CHECK(Subspace::full(3).kernel_rep().rows() == 0);
  CHECK(Subspace::image_of(mat(2, 2, {1, 2, 2, 4})).dim() == 1);
}

TEST_CASE("strict sign feasibility examples") {
  QMatrix e = mat(1, 2, {1, -1});
  auto x = strict_sign_feasible(e, testing::sv("++"));
  REQUIRE(x);
  CHECK(sigma(*x) == testing::sv("++"));
  CHECK((e * *x).isZero());
  CHECK_FALSE(strict_sign_feasible(e, testing::sv("+-")));

  SignConstraint c{mat(2, 2, {1, 1, 2, 1}), testing::sv("++")};
  auto y = strict_sign_feasible(QMatrix(0, 2), testing::sv("+-"), std::span(&c, 1));
  REQUIRE(y);
  CHECK(sigma(*y) == testing::sv("+-"));
  CHECK(sigma(QVector(c.map * *y)) == testing::sv("++"));
  // (2,-1) is the example point; the solver may return another one, but it must be admissible too.
  CHECK(sigma(QVector(c.map * testing::vec({2, -1}))) == testing::sv("++"));
}

TEST_CASE("strict sign feasibility agrees with grid search on small systems") {
  // Grid points with entries in {-3..3} witness feasibility for these tiny systems
  // often enough to catch sign errors; every grid hit must be matched by the solver.
  std::mt19937_64 rng(3);
  int hits = 0;
  for (int t = 0; t < 120; ++t) {
    QMatrix e = random_matrix(rng, 1, 3, -2, 2);
    for (const auto& tau : all_sign_vectors(3)) {
      bool grid = false;
      for (int a = -3; a <= 3 && !grid; ++a)
        for (int b = -3; b <= 3 && !grid; ++b)
          for (int c = -3; c <= 3 && !grid; ++c) {
            QVector p = vec({a, b, c});
            grid = sigma(p) == tau && (e * p).isZero();
          }
      auto got = strict_sign_feasible(e, tau);
      if (grid) {
        ++hits;
        CHECK(got.has_value());
      }
      if (got) {
        CHECK(sigma(*got) == tau);
        CHECK((e * *got).isZero());
      }
    }
  }
  CHECK(hits > 0);
}

TEST_CASE("linear system with bounds") {
  LinearSystem sys(2);
  sys.restrict_sign(0, VarSign::NonNegative);
  sys.add(vec({1, 1}), Relation::Equal, 3);
  sys.add(vec({1, -1}), Relation::AtLeast, 5);
  auto x = sys.solve();
  REQUIRE(x);
  CHECK((*x)(0) + (*x)(1) == 3);
  CHECK((*x)(0) - (*x)(1) >= 5);
  sys.restrict_sign(1, VarSign::NonNegative);
  CHECK_FALSE(sys.solve());
}
