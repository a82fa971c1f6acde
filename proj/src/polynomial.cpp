#include "inj/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "inj/error.hpp"

namespace inj {

std::string Param::name() const {
  const char* prefix = "";
  switch (kind) {
    case ParamKind::RowScale:
      prefix = "kappa";
      break;
    case ParamKind::ColScale:
      prefix = "lambda";
      break;
    case ParamKind::SignAtom:
      prefix = "mu";
      break;
    case ParamKind::IntervalAtom:
      prefix = "nu";
      break;
  }
  return prefix + std::to_string(index);
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return out;
}

std::string to_string(const Monomial& m) {
  if (m.empty()) return "1";
  std::string out;
  for (const auto& [p, e] : m) {
    if (!out.empty()) out += "*";
    out += p.name();
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

bool is_multilinear(const Monomial& m) {
  return std::all_of(m.begin(), m.end(), [](const auto& t) { return t.second == 1; });
}

Polynomial::Polynomial(const Rational& constant) {
  if (!constant.is_zero()) terms_.emplace(Monomial{}, constant);
}

Polynomial Polynomial::variable(Param p) {
  Polynomial out;
  out.terms_.emplace(Monomial{{p, 1}}, Rational(1));
  return out;
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

int Polynomial::degree_in(Param p) const {
  int d = 0;
  for (const auto& [m, c] : terms_)
    for (const auto& [q, e] : m)
      if (q == p) d = std::max(d, e);
  return d;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
  return out;
}

Rational Polynomial::evaluate(const Assignment& values) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (const auto& [p, e] : m) {
      auto it = values.find(p);
      if (it == values.end()) throw std::invalid_argument("no value for parameter " + p.name());
      for (int k = 0; k < e; ++k) term *= it->second;
    }
    total += term;
  }
  return total;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (m.empty()) {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag) + "*";
      out += to_string(m);
    }
  }
  return out;
}

Polynomial symbolic_determinant(const Grid<Polynomial>& m, std::size_t max_terms) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw ShapeError("symbolic determinant of non-square matrix");
  if (n == 0) return Polynomial(Rational(1));
  if (n > 24) throw CapExceeded("symbolic determinant size", n, 24);
  // dp[mask]: signed sum over injective assignments of the first popcount(mask) rows into `mask`.
  std::vector<Polynomial> dp(std::size_t{1} << n);
  dp[0] = Polynomial(Rational(1));
  for (std::size_t row = 0; row < n; ++row) {
    std::vector<Polynomial> next(dp.size());
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != row || dp[mask].is_zero()) continue;
      for (std::size_t col = 0; col < n; ++col) {
        if (mask & (std::size_t{1} << col) || m(row, col).is_zero()) continue;
        Polynomial term = dp[mask] * m(row, col);
        if (std::popcount(mask >> (col + 1)) % 2 == 1) term *= Rational(-1);
        auto& slot = next[mask | (std::size_t{1} << col)];
        slot += term;
        if (slot.size() > max_terms) throw CapExceeded("determinant monomial table", slot.size(), max_terms);
      }
    }
    dp = std::move(next);
  }
  return dp.back();
}

}  // namespace inj
