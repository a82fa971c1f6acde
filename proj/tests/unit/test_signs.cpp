#include <doctest.h>

#include "inj/matrix_io.hpp"
#include "inj/signs.hpp"
#include "support.hpp"

using namespace inj;
using testing::sv;

namespace {

bool orthogonal_by_definition(const SignVector& a, const SignVector& b) {
  bool plus = false, minus = false, nonzero = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Sign p = a[i] * b[i];
    nonzero |= p != Sign::Zero;
    plus |= p == Sign::Plus;
    minus |= p == Sign::Minus;
  }
  return !nonzero || (plus && minus);
}

}  // namespace

TEST_CASE("sigma") {
  CHECK(sigma(testing::vecq({"3", "0", "-1/2"})) == sv("+0-"));
  CHECK(sigma(testing::vec({0, 0})) == sv("00"));
  CHECK(sigma(testing::vec({1, 1})) == sv("++"));
}

TEST_CASE("sign order") {
  CHECK(sign_leq(sv("0+"), sv("-+")));
  CHECK_FALSE(sign_leq(sv("+0"), sv("-0")));
  for (const auto& t : all_sign_vectors(3)) CHECK(sign_leq(t, t));
  CHECK_THROWS(sign_leq(sv("+"), sv("++")));
}

TEST_CASE("sign orthogonality") {
  CHECK(sign_orthogonal(sv("+-"), sv("++")));
  CHECK_FALSE(sign_orthogonal(sv("+0"), sv("+0")));
  for (const auto& r : all_sign_vectors(3)) CHECK(sign_orthogonal(sv("000"), r));
  for (const auto& a : all_sign_vectors(3))
    for (const auto& b : all_sign_vectors(3)) CHECK(sign_orthogonal(a, b) == orthogonal_by_definition(a, b));
  CHECK_THROWS(sign_orthogonal(sv("+"), sv("++")));
}

TEST_CASE("all sign vectors are ordered - 0 +") {
  auto v = all_sign_vectors(2);
  REQUIRE(v.size() == 9);
  CHECK(v.front() == sv("--"));
  CHECK(v[1] == sv("-0"));
  CHECK(v.back() == sv("++"));
}

TEST_CASE("sign sets") {
  CHECK(all_sign_sets().size() == 7);
  for (const auto& s : all_sign_sets()) CHECK(SignSet::parse(s.token()) == s);
  CHECK(SignSet::parse("-+").count() == 2);
  CHECK(SignSet::parse("*") == SignSet::all());
  CHECK(SignSet::parse("0+").times(Sign::Minus) == SignSet::parse("-0"));
  CHECK_THROWS(SignSet::parse("x"));
}

TEST_CASE("sign-set row orthogonality examples") {
  auto row = [](const char* text) { return parse_sign_set_matrix(text); };
  auto w1 = row("+ -\n");
  CHECK(signset_row_orthogonal(std::span(w1.row(0), 2), sv("++")));
  auto w2 = row("+ 0\n");
  CHECK_FALSE(signset_row_orthogonal(std::span(w2.row(0), 2), sv("++")));
  auto w3 = row("* -0 +\n");
  CHECK(signset_row_orthogonal(std::span(w3.row(0), 3), sv("000")));
}

TEST_CASE("sign-set orthogonality equals enumeration over admissible sign vectors") {
  // Every 2-entry row over the 7 sign sets against every rho.
  for (const auto& a : all_sign_sets())
    for (const auto& b : all_sign_sets()) {
      std::vector<SignSet> w{a, b};
      for (const auto& rho : all_sign_vectors(2)) {
        bool brute = false;
        for (Sign s : a.members())
          for (Sign t : b.members()) brute |= sign_orthogonal(SignVector({s, t}), rho);
        CHECK(signset_row_orthogonal(w, rho) == brute);
        auto pick = orthogonal_selection(w, rho);
        CHECK(pick.has_value() == brute);
        if (pick) {
          CHECK(a.contains((*pick)[0]));
          CHECK(b.contains((*pick)[1]));
          CHECK(sign_orthogonal(*pick, rho));
        }
      }
    }
}
