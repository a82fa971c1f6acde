#pragma once

#include <optional>
#include <span>
#include <vector>

#include "inj/linalg.hpp"
#include "inj/signs.hpp"

namespace inj {

enum class Relation { Equal, AtLeast, AtMost };

struct LinearConstraint {
  QVector coeffs;
  Relation relation;
  Rational rhs;
};

enum class VarSign { Free, NonNegative, NonPositive, Zero };

/// A conjunction of linear equalities/inequalities over sign-restricted
/// variables. Solved exactly by a phase-1 simplex with Bland's rule.
class LinearSystem {
 public:
  explicit LinearSystem(Index variables)
      : variables_(variables), signs_(static_cast<std::size_t>(variables), VarSign::Free) {}

  Index variables() const { return variables_; }
  void restrict_sign(Index var, VarSign s) { signs_[static_cast<std::size_t>(var)] = s; }
  void add(QVector coeffs, Relation relation, Rational rhs);
  /// Adds one constraint per row of `rows` against the matching entry of `rhs`.
  void add_rows(const QMatrix& rows, Relation relation, const QVector& rhs);

  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  const std::vector<VarSign>& signs() const { return signs_; }

  /// A point satisfying every constraint, or nullopt if none exists.
  std::optional<QVector> solve() const;

 private:
  Index variables_;
  std::vector<VarSign> signs_;
  std::vector<LinearConstraint> constraints_;
};

/// Prescribes σ(C x) = signs.
struct SignConstraint {
  QMatrix map;
  SignVector signs;
};

/// Some x with E x = 0, σ(x) = tau and σ(C x) = rho for every extra pair.
/// Strict signs are normalized to |.| >= 1, which is exact because every
/// solution set here is a cone.
std::optional<QVector> strict_sign_feasible(const QMatrix& e, const SignVector& tau,
                                            std::span<const SignConstraint> extra = {});

}  // namespace inj
