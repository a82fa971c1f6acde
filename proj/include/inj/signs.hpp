#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "inj/error.hpp"
#include "inj/rational.hpp"

namespace inj {

enum class Sign : std::int8_t { Minus = -1, Zero = 0, Plus = 1 };

constexpr Sign operator*(Sign a, Sign b) {
  return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}

constexpr Sign negate(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }

char to_char(Sign s);
Sign sign_from_char(char c);

template <typename Scalar>
Sign sign_of(const Scalar& x) {
  if (x > Scalar(0)) return Sign::Plus;
  if (x < Scalar(0)) return Sign::Minus;
  return Sign::Zero;
}

/// An element of {-,0,+}^n. Textual form is a string over `+`, `-`, `0`.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::size_t n, Sign fill = Sign::Zero) : entries_(n, fill) {}
  explicit SignVector(std::vector<Sign> entries) : entries_(std::move(entries)) {}

  static SignVector parse(std::string_view text);

  std::size_t size() const { return entries_.size(); }
  Sign operator[](std::size_t i) const { return entries_[i]; }
  Sign& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<Sign>& entries() const { return entries_; }

  bool is_zero() const;
  std::string str() const;

  auto operator<=>(const SignVector&) const = default;

 private:
  std::vector<Sign> entries_;
};

/// Component-wise sign of a vector.
template <typename Derived>
SignVector sigma(const Eigen::MatrixBase<Derived>& x) {
  SignVector out(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) out[static_cast<std::size_t>(i)] = sign_of(x(i));
  return out;
}

/// Partial order generated by 0 < - and 0 < +, component-wise.
bool sign_leq(const SignVector& tau, const SignVector& rho);

/// tau . rho = 0: all products vanish, or both - and + occur among them.
bool sign_orthogonal(const SignVector& tau, const SignVector& rho);

/// All 3^n sign vectors in lexicographic order with - < 0 < +.
std::vector<SignVector> all_sign_vectors(std::size_t n);

/// One of the seven non-empty subsets of {-,0,+}.
class SignSet {
 public:
  static constexpr std::uint8_t kMinus = 1;
  static constexpr std::uint8_t kZero = 2;
  static constexpr std::uint8_t kPlus = 4;

  constexpr SignSet() : bits_(kZero) {}
  explicit SignSet(std::uint8_t bits);
  static SignSet of(Sign s);
  static SignSet all() { return SignSet(kMinus | kZero | kPlus); }

  /// Tokens: `0 - + -0 0+ -+ *`.
  static SignSet parse(std::string_view token);
  std::string token() const;

  bool contains(Sign s) const { return (bits_ & bit(s)) != 0; }
  bool is_singleton() const;
  /// Only meaningful for singletons.
  Sign only() const;
  std::size_t count() const;
  std::vector<Sign> members() const;
  std::uint8_t bits() const { return bits_; }

  /// Achievable products {s * t : s in this set}.
  SignSet times(Sign t) const;

  bool operator==(const SignSet&) const = default;

 private:
  static constexpr std::uint8_t bit(Sign s) {
    return s == Sign::Minus ? kMinus : (s == Sign::Zero ? kZero : kPlus);
  }
  std::uint8_t bits_;
};

/// The seven sign sets, in a fixed order.
std::span<const SignSet> all_sign_sets();

/// Some tau with tau_i in w_i and tau . rho = 0, chosen coordinate-wise without
/// enumerating the product set.
std::optional<SignVector> orthogonal_selection(std::span<const SignSet> w, const SignVector& rho);

/// w . rho = 0.
bool signset_row_orthogonal(std::span<const SignSet> w, const SignVector& rho);

}  // namespace inj
