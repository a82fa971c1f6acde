#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "inj/grid.hpp"
#include "inj/rational.hpp"

namespace inj {

/// κ: row scalings of q(B); λ: column scalings; μ: sign-pattern atoms; ν: interval atoms.
enum class ParamKind : std::uint8_t { RowScale, ColScale, SignAtom, IntervalAtom };

/// A named parameter. Indices are 1-based and assigned in class traversal order.
struct Param {
  ParamKind kind;
  int index;

  std::string name() const;
  auto operator<=>(const Param&) const = default;
};

/// Sorted (parameter, positive exponent) pairs.
using Monomial = std::vector<std::pair<Param, int>>;

Monomial multiply(const Monomial& a, const Monomial& b);
std::string to_string(const Monomial& m);
bool is_multilinear(const Monomial& m);

using Assignment = std::map<Param, Rational>;

/// Sparse multivariate polynomial with exact coefficients; zero terms pruned.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const Rational& constant);
  static Polynomial variable(Param p);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Largest exponent of `p` over all terms.
  int degree_in(Param p) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }

  /// Unassigned parameters are an error.
  Rational evaluate(const Assignment& values) const;
  std::string str() const;

  bool operator==(const Polynomial&) const = default;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

/// Exact symbolic determinant (Laplace expansion over column subsets).
/// Throws CapExceeded if an intermediate expansion exceeds `max_terms` monomials.
Polynomial symbolic_determinant(const Grid<Polynomial>& m, std::size_t max_terms);

}  // namespace inj
