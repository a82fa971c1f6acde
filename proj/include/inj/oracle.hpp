#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "inj/classes.hpp"
#include "inj/injectivity.hpp"

namespace inj {

struct OracleConfig {
  std::size_t trials = 1000;
  std::uint64_t seed = 0x5eed;
  /// Sampled magnitudes are k / 2^e with 1 <= k < 2^bits and 0 <= e <= bits.
  int magnitude_bits = 10;
  /// Relative slack of the floating-point pre-checks; hits are confirmed exactly.
  double tolerance = 1e-9;
  /// Directed mode: use this vector of S as the kernel candidate.
  std::optional<QVector> hint;
};

struct FalsifyStats {
  std::size_t trials_run = 0;
  std::size_t float_hits = 0;
  std::size_t exact_rejections = 0;
};

/// A random exact member of the class (open endpoints respected).
Member sample_class(const MatrixClass& c, const OracleConfig& cfg);

/// Randomized search for B̂ in the effective class and z in S \ {0} with
/// B̂ z = 0 (after the left matrix). Each trial draws z from S (or a coordinate
/// face of S), samples every parameter, then solves one group of parameters
/// that enters linearly. Hits are rebuilt and verified in exact arithmetic.
std::optional<SingularWitness> falsify(const Problem& p, const OracleConfig& cfg, FalsifyStats* stats = nullptr);

}  // namespace inj
