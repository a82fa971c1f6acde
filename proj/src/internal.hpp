#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "inj/injectivity.hpp"

namespace inj::detail {

/// The effective class split as [left *] inner with inner a SignPattern,
/// SignSets, Interval or Scaled class.
struct Decomposed {
  std::optional<QMatrix> left;
  ClassPtr inner;
};

std::optional<Decomposed> decompose(const Problem& p);

/// Member of the effective class built from a member of the inner class.
Member wrap_member(const Decomposed& d, Member inner);

/// σ(S*) with a realizing vector for each sign vector.
std::vector<std::pair<SignVector, QVector>> subspace_sign_realizations(const Subspace& s, const Caps& caps);

/// Exhaustive sign search. nullopt when the class shape has no sign route.
std::optional<Verdict> sign_route(const Problem& p, const Caps& caps);

/// Interval boxes with punctured entries split into their halves.
std::vector<IntervalBox> split_box(const IntervalBox& box, std::size_t cap);

/// Feasibility LP of the interval sign route for one box and orthant tau.
/// Returns (x, y) with y = B x solvable for B in the box and A y = 0.
std::optional<std::pair<QVector, QVector>> interval_orthant(const IntervalBox& box, const QMatrix& z,
                                                            const std::optional<QMatrix>& left, const SignVector& tau);

/// A row-wise member B of the box with B x = y, given a feasible (x, y).
QMatrix realize_interval(const IntervalBox& box, const QVector& x, const QVector& y);

/// Attaches a monomial lift when the witness comes from a Scaled inner class
/// under a fixed (or no) left matrix.
void attach_lift(const Problem& p, SingularWitness& w);

}  // namespace inj::detail
