#include <doctest.h>

#include "inj/oracle.hpp"
#include "support.hpp"

using namespace inj;
using namespace testing;

TEST_CASE("falsifier finds a singular member of the open-orthant box") {
  Problem p = problem(open_box(), Subspace::full(2));
  OracleConfig cfg;
  FalsifyStats st;
  auto w = falsify(p, cfg, &st);
  REQUIRE(w);
  CHECK(verify_witness(*w, p));
  CHECK(st.trials_run <= 1000);
}

TEST_CASE("falsifier stays silent on an injective class") {
  Problem p = problem(MatrixClass::scaled(b22()), Subspace::full(2));
  OracleConfig cfg;
  cfg.trials = 20000;
  FalsifyStats st;
  CHECK_FALSE(falsify(p, cfg, &st));
  CHECK(st.trials_run == 20000);
}

TEST_CASE("falsifier on W_H matches the exact kernel direction") {
  Problem p = problem(w_h(), plane_s());
  auto exact = check_injectivity(p);
  REQUIRE(exact.witness);
  OracleConfig cfg;
  cfg.hint = exact.witness->z;
  auto w = falsify(p, cfg);
  REQUIRE(w);
  CHECK(verify_witness(*w, p));
  CHECK(same_column_span(QMatrix(w->z), QMatrix(exact.witness->z)));

  OracleConfig blind;
  auto u = falsify(p, blind);
  REQUIRE(u);
  CHECK(verify_witness(*u, p));
}

TEST_CASE("falsifier is deterministic") {
  Problem p = problem(diag_box(), Subspace::full(2), a12());
  OracleConfig cfg;
  cfg.seed = 1234;
  FalsifyStats s1, s2;
  auto a = falsify(p, cfg, &s1);
  auto b = falsify(p, cfg, &s2);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->member.value == b->member.value);
  CHECK(a->z == b->z);
  CHECK(s1.trials_run == s2.trials_run);
  CHECK(s1.float_hits == s2.float_hits);
  Member m1 = sample_class(*w_times_qb(), cfg);
  Member m2 = sample_class(*w_times_qb(), cfg);
  CHECK(m1.value == m2.value);
}

TEST_CASE("falsifier on products and left matrices") {
  Problem ok = problem(w_times_qb(), plane_s());
  OracleConfig cfg;
  cfg.trials = 5000;
  CHECK_FALSE(falsify(ok, cfg));
  Problem ok2 = problem(box42(), Subspace::full(2), a24());
  CHECK_FALSE(falsify(ok2, cfg));
  Problem bad = problem(open_box(), Subspace::full(2), mat(1, 2, {1, 1}));
  auto w = falsify(bad, cfg);
  REQUIRE(w);
  CHECK(verify_witness(*w, bad));
}
