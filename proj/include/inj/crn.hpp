#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "inj/classes.hpp"
#include "inj/injectivity.hpp"

namespace inj {

struct Reaction {
  std::string label;
  QVector reactant;  // per species
  QVector product;
  std::optional<QVector> orders;              // kinetic orders, power-law kinetics
  std::optional<std::vector<SignSet>> influence;  // row override of the influence matrix
};

/// Reaction network over an ordered species list. Reversible reactions are
/// stored as two irreversible ones labelled `<label>_fwd` and `<label>_rev`.
struct Network {
  std::vector<std::string> species;
  std::vector<Reaction> reactions;

  /// n x r, column k = product - reactant of reaction k.
  QMatrix stoichiometric() const;
  /// r x n, row k = reactant stoichiometry of reaction k.
  QMatrix reactant_matrix() const;
  /// r x n kinetic orders; throws if some reaction has none.
  QMatrix kinetic_orders() const;
};

enum class KineticsMode { MassAction, PowerLaw, MonotonicStrict, MonotonicWeak };

KineticsMode parse_kinetics_mode(std::string_view name);
std::string to_string(KineticsMode m);

/// Line-oriented format:
///   species A B C                         (optional; otherwise order of appearance)
///   [label:] 2 A + B -> C [: orders A=1/2 B=1]
///   [label:] A <-> B                      (two reactions)
///   influence <label> <sign set per species>
/// `0` denotes an empty side; `#` starts a comment.
Network parse_network(std::string_view text);

/// Text that parse_network maps back to the same network.
std::string serialize(const Network& net);

/// r x n influence matrix: {+} (strict) or {0,+} (weak) where the reactant
/// stoichiometry is positive, {0} elsewhere; `influence` rows override.
SignSetMatrix influence_matrix(const Network& net, KineticsMode mode);

/// S = im(A), left = A, class q(B) for mass-action/power-law kinetics or Q(𝒲)
/// for monotonic kinetics, analysed on the open positive orthant.
Problem build_problem(const Network& net, KineticsMode mode);

}  // namespace inj
