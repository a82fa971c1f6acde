#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "inj/grid.hpp"
#include "inj/rational.hpp"
#include "inj/signs.hpp"

namespace inj {

/// A subset of R given by an interval with open/closed/infinite endpoints, or
/// an interval with 0 removed from its interior (the `{-,+}` case).
class IntervalEntry {
 public:
  /// The whole real line.
  IntervalEntry() = default;

  /// nullopt endpoints are infinite and always open.
  static IntervalEntry make(std::optional<Rational> lower, bool lower_open, std::optional<Rational> upper,
                            bool upper_open, bool punctured_at_zero = false);
  static IntervalEntry point(const Rational& value);
  static IntervalEntry open(const Rational& lower, const Rational& upper);
  static IntervalEntry closed(const Rational& lower, const Rational& upper);
  static IntervalEntry positive();
  static IntervalEntry negative();
  static IntervalEntry real_line();

  /// Accepts `[1,2)`, `(0,inf)`, `(-inf,0]`, `{3/2}`, `(-inf,0)u(0,inf)`, or a bare number (point).
  static IntervalEntry parse(std::string_view token);
  std::string str() const;

  const std::optional<Rational>& lower() const { return lower_; }
  const std::optional<Rational>& upper() const { return upper_; }
  bool lower_open() const { return lower_open_; }
  bool upper_open() const { return upper_open_; }
  bool punctured() const { return punctured_; }

  bool is_point() const;
  bool is_bounded() const { return lower_ && upper_; }
  bool contains(const Rational& x) const;

  /// A deterministic member: the midpoint when bounded, otherwise an endpoint
  /// offset by one, or 0 (1 when punctured) on the whole line.
  Rational interior_point() const;

  /// The two halves of a punctured entry; a plain interval maps to itself.
  std::pair<IntervalEntry, std::optional<IntervalEntry>> split_punctured() const;

  /// Signs attained by members.
  SignSet signs() const;

  bool operator==(const IntervalEntry&) const = default;

 private:
  std::optional<Rational> lower_;
  std::optional<Rational> upper_;
  bool lower_open_ = true;
  bool upper_open_ = true;
  bool punctured_ = false;
};

using IntervalBox = Grid<IntervalEntry>;

}  // namespace inj
