#include <doctest.h>

#include <cmath>

#include "inj/injectivity.hpp"
#include "support.hpp"

using namespace inj;
using namespace testing;

TEST_CASE("lift example with B = (1,-1)") {
  auto lift = lift_monomial_witness(mat(1, 2, {1, -1}), vec({1, 1}), vec({1, 1}));
  const double x = std::exp(1.0) / (std::exp(1.0) - 1.0);
  for (int i = 0; i < 2; ++i) {
    CHECK(lift.x[i] == doctest::Approx(x).epsilon(1e-12));
    CHECK(lift.y[i] == doctest::Approx(x - 1).epsilon(1e-12));
  }
  CHECK(lift.x[0] == doctest::Approx(1.582).epsilon(1e-3));
  CHECK(verify_lift(mat(1, 2, {1, -1}), vec({1, 1}), lift));
}

TEST_CASE("lift example with B = (1,1)") {
  auto lift = lift_monomial_witness(mat(1, 2, {1, 1}), vec({1, -1}), vec({2, -3}));
  CHECK(lift.x[0] == doctest::Approx(3.164).epsilon(1e-3));
  CHECK(lift.x[1] == doctest::Approx(1.746).epsilon(1e-3));
  CHECK(lift.y[0] == doctest::Approx(1.164).epsilon(1e-3));
  CHECK(lift.y[1] == doctest::Approx(4.746).epsilon(1e-3));
  CHECK(lift.x[0] * lift.x[1] == doctest::Approx(5.525).epsilon(1e-3));
  CHECK(lift.x[0] * lift.x[1] == doctest::Approx(lift.y[0] * lift.y[1]).epsilon(1e-12));
}

TEST_CASE("zero coordinates lift to ones") {
  auto lift = lift_monomial_witness(mat(1, 3, {1, 1, 5}), vec({1, -1, 0}), vec({2, -3, 0}));
  CHECK(lift.x[2] == 1.0);
  CHECK(lift.y[2] == 1.0);
}

TEST_CASE("lift preconditions") {
  CHECK_THROWS(lift_monomial_witness(mat(1, 2, {1, 1}), vec({1, 1}), vec({1, 1})));
  CHECK_THROWS(lift_monomial_witness(mat(1, 2, {1, -1}), vec({1, 1}), vec({1, -1})));
}

TEST_CASE("tampered lift fails") {
  auto lift = lift_monomial_witness(mat(1, 2, {1, -1}), vec({1, 1}), vec({1, 1}));
  lift.x[0] += 1e-3;
  CHECK_FALSE(verify_lift(mat(1, 2, {1, -1}), vec({1, 1}), lift));
}

TEST_CASE("interval witness for the open-orthant box") {
  Problem p = problem(open_box(), Subspace::full(2));
  auto v = check_injectivity(p);
  REQUIRE(v.witness);
  const auto& w = *v.witness;
  CHECK(is_zero(QVector(w.member.value * w.z)));
  CHECK(verify_witness(w, p));
  // The rank-one member [[1,1],[1,1]] with z = (1,-1) also certifies it.
  SingularWitness manual{Member{mat(2, 2, {1, 1, 1, 1}), {}, {}, {}}, vec({1, -1}), std::nullopt};
  CHECK(verify_witness(manual, p));
  SingularWitness off{Member{mat(2, 2, {1, 1, 1, 2}), {}, {}, {}}, vec({1, -1}), std::nullopt};
  CHECK_FALSE(verify_witness(off, p));
}

TEST_CASE("scaled witnesses carry a verified lift") {
  Problem p = problem(MatrixClass::scaled(mat(1, 2, {1, -1})), Subspace::full(2));
  auto v = check_injectivity(p);
  REQUIRE(v.witness);
  REQUIRE(v.witness->lift);
  CHECK(verify_lift(mat(1, 2, {1, -1}), v.witness->z, *v.witness->lift));
}

TEST_CASE("build_witness from sign-pair evidence") {
  Problem p = problem(MatrixClass::scaled(mat(1, 2, {1, -1})), Subspace::full(2));
  auto w = build_witness(p, SignPairEvidence{sv("++"), sv("0")});
  CHECK(verify_witness(w, p));
  CHECK_THROWS(build_witness(p, SignPairEvidence{sv("+-"), sv("0")}));
}

TEST_CASE("build_witness from a mixed table") {
  Problem p = problem(w_h(), plane_s());
  auto aug = augment_with_kernel_rep(p.subspace, p.cls);
  auto a = det_sign_analysis(*aug);
  CHECK(a.sign == DetSign::Mixed);
  auto w = build_witness(p, a);
  CHECK(verify_witness(w, p));
  CHECK(p.subspace.contains(w.z));
}

TEST_CASE("lift survives large exponents under a left matrix") {
  // The table root here spreads lambda over several orders of magnitude.
  QMatrix b = mat(3, 4, {-3, 0, 2, 1, -3, 3, 3, 0, 2, -3, -1, -1});
  Problem p = problem(MatrixClass::scaled(b), Subspace::image_of(mat(4, 1, {2, -2, 2, -3})), mat(1, 3, {-1, 3, -2}));
  auto a = det_sign_analysis(*augment_with_kernel_rep(p.subspace, p.effective_class()));
  REQUIRE(a.sign == DetSign::Mixed);
  auto w = build_witness(p, a);
  REQUIRE(w.lift);
  CHECK(verify_lift(b, w.z, *w.lift, 1e-9, p.left));
  for (double x : w.lift->x) CHECK(x > 0);
}
