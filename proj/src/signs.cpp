#include "inj/signs.hpp"

#include <array>
#include <stdexcept>

namespace inj {

char to_char(Sign s) {
  switch (s) {
    case Sign::Minus:
      return '-';
    case Sign::Zero:
      return '0';
    case Sign::Plus:
      return '+';
  }
  return '?';
}

Sign sign_from_char(char c) {
  switch (c) {
    case '-':
      return Sign::Minus;
    case '0':
      return Sign::Zero;
    case '+':
      return Sign::Plus;
    default:
      throw std::invalid_argument(std::string("not a sign character: '") + c + "'");
  }
}

SignVector SignVector::parse(std::string_view text) {
  std::vector<Sign> entries;
  entries.reserve(text.size());
  for (char c : text) entries.push_back(sign_from_char(c));
  return SignVector(std::move(entries));
}

bool SignVector::is_zero() const {
  for (Sign s : entries_)
    if (s != Sign::Zero) return false;
  return true;
}

std::string SignVector::str() const {
  std::string out;
  out.reserve(entries_.size());
  for (Sign s : entries_) out.push_back(to_char(s));
  return out;
}

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* op) {
  if (a != b) throw ShapeError(std::string(op) + ": sign vectors of different lengths");
}

}  // namespace

bool sign_leq(const SignVector& tau, const SignVector& rho) {
  require_same_length(tau.size(), rho.size(), "sign_leq");
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau[i] != Sign::Zero && tau[i] != rho[i]) return false;
  }
  return true;
}

bool sign_orthogonal(const SignVector& tau, const SignVector& rho) {
  require_same_length(tau.size(), rho.size(), "sign_orthogonal");
  bool plus = false;
  bool minus = false;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    Sign p = tau[i] * rho[i];
    plus |= p == Sign::Plus;
    minus |= p == Sign::Minus;
  }
  return plus == minus;
}

std::vector<SignVector> all_sign_vectors(std::size_t n) {
  std::vector<SignVector> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  out.reserve(total);
  SignVector cur(n, Sign::Minus);
  for (std::size_t k = 0; k < total; ++k) {
    out.push_back(cur);
    for (std::size_t i = n; i-- > 0;) {
      if (cur[i] == Sign::Plus) {
        cur[i] = Sign::Minus;
        continue;
      }
      cur[i] = cur[i] == Sign::Minus ? Sign::Zero : Sign::Plus;
      break;
    }
  }
  return out;
}

SignSet::SignSet(std::uint8_t bits) : bits_(bits) {
  if (bits == 0 || bits > 7) throw std::invalid_argument("sign set must be a non-empty subset of {-,0,+}");
}

SignSet SignSet::of(Sign s) { return SignSet(bit(s)); }

SignSet SignSet::parse(std::string_view token) {
  if (token == "*") return all();
  std::uint8_t bits = 0;
  for (char c : token) {
    std::uint8_t b = bit(sign_from_char(c));
    if (bits & b) throw std::invalid_argument("repeated sign in sign-set token '" + std::string(token) + "'");
    bits |= b;
  }
  if (bits == 0) throw std::invalid_argument("empty sign-set token");
  return SignSet(bits);
}

std::string SignSet::token() const {
  if (bits_ == 7) return "*";
  std::string out;
  if (bits_ & kMinus) out.push_back('-');
  if (bits_ & kZero) out.push_back('0');
  if (bits_ & kPlus) out.push_back('+');
  return out;
}

bool SignSet::is_singleton() const { return bits_ == kMinus || bits_ == kZero || bits_ == kPlus; }

Sign SignSet::only() const {
  if (bits_ == kMinus) return Sign::Minus;
  if (bits_ == kPlus) return Sign::Plus;
  return Sign::Zero;
}

std::size_t SignSet::count() const {
  return static_cast<std::size_t>((bits_ & 1) + ((bits_ >> 1) & 1) + ((bits_ >> 2) & 1));
}

std::vector<Sign> SignSet::members() const {
  std::vector<Sign> out;
  for (Sign s : {Sign::Minus, Sign::Zero, Sign::Plus})
    if (contains(s)) out.push_back(s);
  return out;
}

SignSet SignSet::times(Sign t) const {
  std::uint8_t bits = 0;
  for (Sign s : members()) bits |= bit(s * t);
  return SignSet(bits);
}

std::span<const SignSet> all_sign_sets() {
  static const std::array<SignSet, 7> sets = {
      SignSet(SignSet::kZero),
      SignSet(SignSet::kMinus),
      SignSet(SignSet::kPlus),
      SignSet(SignSet::kMinus | SignSet::kZero),
      SignSet(SignSet::kZero | SignSet::kPlus),
      SignSet(SignSet::kMinus | SignSet::kPlus),
      SignSet::all(),
  };
  return sets;
}

std::optional<SignVector> orthogonal_selection(std::span<const SignSet> w, const SignVector& rho) {
  require_same_length(w.size(), rho.size(), "signset_row_orthogonal");
  const std::size_t n = w.size();

  // Pick, per coordinate, a member of w_i whose product with rho_i is `target`.
  auto pick = [&](std::size_t i, Sign target) -> std::optional<Sign> {
    for (Sign s : w[i].members())
      if (s * rho[i] == target) return s;
    return std::nullopt;
  };

  bool all_zero = true;
  for (std::size_t i = 0; i < n && all_zero; ++i) all_zero = w[i].times(rho[i]).contains(Sign::Zero);
  if (all_zero) {
    SignVector tau(n);
    for (std::size_t i = 0; i < n; ++i) tau[i] = *pick(i, Sign::Zero);
    return tau;
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!w[i].times(rho[i]).contains(Sign::Minus)) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || !w[k].times(rho[k]).contains(Sign::Plus)) continue;
      SignVector tau(n);
      for (std::size_t j = 0; j < n; ++j) tau[j] = w[j].members().front();
      tau[i] = *pick(i, Sign::Minus);
      tau[k] = *pick(k, Sign::Plus);
      return tau;
    }
  }
  return std::nullopt;
}

bool signset_row_orthogonal(std::span<const SignSet> w, const SignVector& rho) {
  return orthogonal_selection(w, rho).has_value();
}

}  // namespace inj
