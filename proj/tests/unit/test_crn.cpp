#include <doctest.h>

#include "inj/crn.hpp"
#include "inj/matrix_io.hpp"
#include "support.hpp"

using namespace inj;
using namespace testing;

TEST_CASE("stoichiometry of single reactions") {
  auto n = parse_network("A + B -> C\n");
  CHECK(n.species == std::vector<std::string>{"A", "B", "C"});
  CHECK(n.stoichiometric() == mat(3, 1, {-1, -1, 1}));
  CHECK(n.reactant_matrix() == mat(1, 3, {1, 1, 0}));

  auto r = parse_network("2 A <-> B\n");
  REQUIRE(r.reactions.size() == 2);
  CHECK(r.stoichiometric() == mat(2, 2, {-2, 2, 1, -1}));
  CHECK(r.reactions[0].label == "R1_fwd");

  auto o = parse_network("A -> B : orders A=1/2\n");
  CHECK(o.reactant_matrix() == mat(1, 2, {1, 0}));
  CHECK(o.kinetic_orders()(0, 0) == Rational(1, 2));
  CHECK(o.kinetic_orders()(0, 1) == 0);
}

TEST_CASE("mass action problem for binding") {
  auto n = parse_network("A + B -> C\nC -> A + B\n");
  auto p = build_problem(n, KineticsMode::MassAction);
  REQUIRE(p.left);
  CHECK(*p.left == mat(3, 2, {-1, 1, -1, 1, 1, -1}));
  auto* s = p.cls->as<ScaledClass>();
  REQUIRE(s);
  CHECK(s->base == mat(2, 3, {1, 1, 0, 0, 0, 1}));
  CHECK(p.subspace.dim() == 1);
  CHECK(p.subspace.contains(vec({-1, -1, 1})));

  auto weak = influence_matrix(n, KineticsMode::MonotonicWeak);
  CHECK(weak == parse_sign_set_matrix("0+ 0+ 0\n0 0 0+\n"));
  auto strict = influence_matrix(n, KineticsMode::MonotonicStrict);
  CHECK(strict == parse_sign_set_matrix("+ + 0\n0 0 +\n"));
}

TEST_CASE("dimerisation is injective") {
  auto p = build_problem(parse_network("2 A -> A\n"), KineticsMode::MassAction);
  auto v = check_injectivity(p);
  CHECK(v.status == Status::Injective);
}

TEST_CASE("network text round trip") {
  const char* text =
      "species A B C D\n"
      "bind: A + B <-> C\n"
      "2 C -> D : orders C=3/2\n"
      "D -> 0\n"
      "0 -> A\n"
      "influence bind_rev * -0 + 0\n";
  auto n = parse_network(text);
  auto again = parse_network(serialize(n));
  CHECK(again.species == n.species);
  REQUIRE(again.reactions.size() == n.reactions.size());
  for (std::size_t k = 0; k < n.reactions.size(); ++k) {
    CHECK(again.reactions[k].label == n.reactions[k].label);
    CHECK(again.reactions[k].reactant == n.reactions[k].reactant);
    CHECK(again.reactions[k].product == n.reactions[k].product);
    CHECK(again.reactions[k].orders == n.reactions[k].orders);
    CHECK(again.reactions[k].influence == n.reactions[k].influence);
  }
  auto w = influence_matrix(n, KineticsMode::MonotonicStrict);
  CHECK(w(1, 0) == SignSet::all());
  CHECK(w(1, 1) == SignSet::parse("-0"));
}

TEST_CASE("network parse errors") {
  CHECK_THROWS_AS(parse_network("A -> \n"), ParseError);
  CHECK_THROWS_AS(parse_network("species A\nA -> B\n"), ParseError);
  CHECK_THROWS_AS(parse_network("x: A -> B\nx: B -> A\n"), ParseError);
  CHECK_THROWS_AS(parse_network("A <-> B : orders A=1\n"), ParseError);
  CHECK_THROWS_AS(parse_network("A -> B\ninfluence nope +\n"), ParseError);
  CHECK_THROWS(parse_kinetics_mode("fast"));
  CHECK(parse_kinetics_mode("mass-action") == KineticsMode::MassAction);
}

TEST_CASE("power law needs orders everywhere") {
  auto n = parse_network("A -> B : orders A=1/2\nB -> A\n");
  CHECK_THROWS(build_problem(n, KineticsMode::PowerLaw));
}
