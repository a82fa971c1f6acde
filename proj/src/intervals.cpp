#include "inj/intervals.hpp"

#include <cctype>
#include <stdexcept>

namespace inj {

IntervalEntry IntervalEntry::make(std::optional<Rational> lower, bool lower_open, std::optional<Rational> upper,
                                  bool upper_open, bool punctured_at_zero) {
  IntervalEntry e;
  e.lower_ = std::move(lower);
  e.upper_ = std::move(upper);
  e.lower_open_ = e.lower_ ? lower_open : true;
  e.upper_open_ = e.upper_ ? upper_open : true;
  e.punctured_ = punctured_at_zero;
  if (e.lower_ && e.upper_) {
    if (*e.lower_ > *e.upper_) throw std::invalid_argument("interval lower endpoint exceeds upper endpoint");
    if (*e.lower_ == *e.upper_ && (e.lower_open_ || e.upper_open_))
      throw std::invalid_argument("empty interval: point with an open endpoint");
  }
  if (e.punctured_) {
    bool zero_inside = (!e.lower_ || *e.lower_ < 0) && (!e.upper_ || *e.upper_ > 0);
    if (!zero_inside) throw std::invalid_argument("punctured interval must contain 0 strictly inside");
  }
  return e;
}

IntervalEntry IntervalEntry::point(const Rational& value) { return make(value, false, value, false); }
IntervalEntry IntervalEntry::open(const Rational& l, const Rational& u) { return make(l, true, u, true); }
IntervalEntry IntervalEntry::closed(const Rational& l, const Rational& u) { return make(l, false, u, false); }
IntervalEntry IntervalEntry::positive() { return make(Rational(0), true, std::nullopt, true); }
IntervalEntry IntervalEntry::negative() { return make(std::nullopt, true, Rational(0), true); }
IntervalEntry IntervalEntry::real_line() { return IntervalEntry(); }

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

IntervalEntry parse_plain(std::string_view token) {
  const std::string t = trim(token);
  if (t.size() >= 2 && t.front() == '{' && t.back() == '}')
    return IntervalEntry::point(parse_rational(trim(std::string_view(t).substr(1, t.size() - 2))));
  if (t.size() < 5 || (t.front() != '(' && t.front() != '[') || (t.back() != ')' && t.back() != ']')) {
    return IntervalEntry::point(parse_rational(t));
  }
  const auto comma = t.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("interval '" + t + "' has no comma");
  const std::string lo = trim(std::string_view(t).substr(1, comma - 1));
  const std::string hi = trim(std::string_view(t).substr(comma + 1, t.size() - comma - 2));
  const bool lo_open = t.front() == '(';
  const bool hi_open = t.back() == ')';
  std::optional<Rational> lower;
  std::optional<Rational> upper;
  if (lo == "-inf") {
    if (!lo_open) throw std::invalid_argument("infinite endpoint must be open in '" + t + "'");
  } else {
    lower = parse_rational(lo);
  }
  if (hi == "inf" || hi == "+inf") {
    if (!hi_open) throw std::invalid_argument("infinite endpoint must be open in '" + t + "'");
  } else {
    upper = parse_rational(hi);
  }
  return IntervalEntry::make(lower, lo_open, upper, hi_open);
}

}  // namespace

IntervalEntry IntervalEntry::parse(std::string_view token) {
  const std::string t = trim(token);
  if (auto u = t.find(")u("); u != std::string::npos) {
    IntervalEntry left = parse_plain(std::string_view(t).substr(0, u + 1));
    IntervalEntry right = parse_plain(std::string_view(t).substr(u + 2));
    bool ok = left.upper_ && left.upper_->is_zero() && left.upper_open_ && right.lower_ &&
              right.lower_->is_zero() && right.lower_open_;
    if (!ok) throw std::invalid_argument("only unions of the form (a,0)u(0,b) are supported: '" + t + "'");
    return make(left.lower_, left.lower_open_, right.upper_, right.upper_open_, true);
  }
  return parse_plain(t);
}

std::string IntervalEntry::str() const {
  if (is_point()) return "{" + to_string(*lower_) + "}";
  auto lo = lower_ ? to_string(*lower_) : std::string("-inf");
  auto hi = upper_ ? to_string(*upper_) : std::string("inf");
  if (punctured_) return "(" + lo + ",0)u(0," + hi + (upper_open_ ? ")" : "]");
  return std::string(lower_open_ ? "(" : "[") + lo + "," + hi + (upper_open_ ? ")" : "]");
}

bool IntervalEntry::is_point() const { return lower_ && upper_ && *lower_ == *upper_; }

bool IntervalEntry::contains(const Rational& x) const {
  if (punctured_ && x.is_zero()) return false;
  if (lower_) {
    if (x < *lower_ || (lower_open_ && x == *lower_)) return false;
  }
  if (upper_) {
    if (x > *upper_ || (upper_open_ && x == *upper_)) return false;
  }
  return true;
}

Rational IntervalEntry::interior_point() const {
  if (punctured_) return split_punctured().second->interior_point();
  if (lower_ && upper_) return (*lower_ + *upper_) / 2;
  if (lower_) return *lower_ + 1;
  if (upper_) return *upper_ - 1;
  return Rational(0);
}

std::pair<IntervalEntry, std::optional<IntervalEntry>> IntervalEntry::split_punctured() const {
  if (!punctured_) return {*this, std::nullopt};
  IntervalEntry neg = make(lower_, lower_open_, Rational(0), true);
  IntervalEntry pos = make(Rational(0), true, upper_, upper_open_);
  return {neg, pos};
}

SignSet IntervalEntry::signs() const {
  std::uint8_t bits = 0;
  if (!lower_ || *lower_ < 0) bits |= SignSet::kMinus;
  if (!upper_ || *upper_ > 0) bits |= SignSet::kPlus;
  if (contains(Rational(0))) bits |= SignSet::kZero;
  return SignSet(bits);
}

}  // namespace inj
