#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "inj/classes.hpp"
#include "inj/feasibility.hpp"
#include "inj/linalg.hpp"
#include "inj/signs.hpp"

namespace inj {

/// Enumeration limits. Exceeding one raises CapExceeded; it never changes a verdict.
struct Caps {
  std::size_t max_sign_dim = 12;
  std::size_t max_vertices = std::size_t{1} << 20;
  std::size_t max_monomials = 1'000'000;
  std::size_t max_patterns = 1'000'000;
};

/// Injectivity of A∘𝒢 on cosets of S, where Δ_S 𝒢 = 𝓑(S*) for the class 𝓑.
struct Problem {
  ClassPtr cls;
  Subspace subspace = Subspace::full(0);
  std::optional<QMatrix> left;
  /// The domain X has non-empty interior, so dX ∩ S reduces to S*.
  bool full_dimensional_domain = true;

  /// `left * cls` when a left matrix is present, otherwise `cls`.
  ClassPtr effective_class() const;
  /// Throws ShapeError / Error on inconsistent data.
  void validate() const;
};

enum class Status { Injective, NotInjective, Inconclusive };
enum class Method { SignRoute, DetRoute, PatternUnion };

std::string to_string(Status s);
std::string to_string(Method m);

/// Positive points x ≠ y with x - y = w and x^B = y^B, in floating point.
struct MonomialLift {
  std::vector<double> kappa;
  std::vector<double> x;
  std::vector<double> y;
  double difference_residual = 0;  // ||(x - y) - w||_inf / ||w||_inf
  double image_residual = 0;       // ||x^B - y^B||_inf / ||x^B||_inf
};

/// A member B̂ of the (effective) class and z in S \ {0} with B̂ z = 0.
struct SingularWitness {
  Member member;
  QVector z;
  std::optional<MonomialLift> lift;
};

enum class DetSign { Positive, Negative, Zero, Mixed };
std::string to_string(DetSign s);

/// det(M_B) expanded in the class parameters, all of which range over (0, inf).
struct MonomialTable {
  std::vector<std::pair<Monomial, Rational>> terms;
  bool homogeneous = true;
  bool multilinear = true;
  bool distinct_supports = true;
  bool free_positive_params = true;

  /// Mixed coefficient signs force a zero only for multilinear tables over
  /// independent positive parameters: every monomial is then a vertex of the
  /// Newton polytope and can be made to dominate.
  bool zero_attainable_if_mixed() const { return multilinear && free_positive_params; }
};

struct VertexRecord {
  std::vector<bool> at_upper;  // per atom: upper endpoint?
  Rational value;
  bool excluded = false;  // some coordinate sits at an open endpoint
};

/// det(M_B) at every vertex of a bounded interval box; det is affine in each atom.
struct VertexTable {
  std::vector<ParamDomain> atoms;
  std::vector<VertexRecord> vertices;
  Rational min;
  Rational max;
};

struct DetAnalysis {
  DetSign sign = DetSign::Zero;
  std::variant<MonomialTable, VertexTable> table;
};

struct PatternCertificate {
  SignSetMatrix pattern;
  DetAnalysis analysis;
};

/// Record of an exhausted sign search: no (tau, rho) pair was feasible.
struct SignSearchTranscript {
  std::string route;  // "kernel-sign", "pair-sign", "concordance", "interval-lp"
  std::vector<SignVector> subspace_signs;
  std::vector<SignVector> target_signs;  // rho candidates (0 first), empty without a left matrix
  std::size_t checks = 0;
};

using PositivityCertificate = std::variant<DetAnalysis, std::vector<PatternCertificate>, SignSearchTranscript>;

struct Diagnostics {
  std::size_t candidates = 0;
  std::string witness_source;  // "det-table", "sign-route", "oracle", "dimension"
  std::string note;
  double wall_seconds = 0;
};

struct Verdict {
  Status status = Status::Inconclusive;
  Method method = Method::SignRoute;
  std::optional<SingularWitness> witness;
  std::optional<PositivityCertificate> certificate;
  Diagnostics diagnostics;
};

enum class RoutePreference { Auto, Determinant, Sign, PatternUnion };

struct CheckOptions {
  Caps caps;
  RoutePreference route = RoutePreference::Auto;
  /// Falsifier trials used before reporting INCONCLUSIVE; 0 disables the fallback.
  std::size_t fallback_trials = 10'000;
  std::uint64_t fallback_seed = 0x5eed;
};

/// σ(S \ {0}) in lexicographic order (- < 0 < +).
std::vector<SignVector> subspace_sign_vectors(const Subspace& s, const Caps& caps = {});

/// Some x with σ(x) = tau and σ(B x) = rho.
std::optional<QVector> pair_sign_feasible(const QMatrix& b, const SignVector& tau, const SignVector& rho);

/// Whether y = B x is solvable with B in Q(𝒲) for σ(x) = tau, σ(y) = rho.
bool concordant_pair(const SignVector& rho, const SignVector& tau, const SignSetMatrix& w);

/// Constructs B in Q(𝒲) with y = B x when the pair is concordant.
std::optional<QMatrix> realize_concordant(const SignSetMatrix& w, const QVector& x, const QVector& y);

/// Sign of det over a square class (after augmentation). Classes whose
/// parameters are κ/λ/μ use a symbolic monomial table; bounded interval
/// classes use vertex enumeration. Anything else throws Unsupported.
DetAnalysis det_sign_analysis(const MatrixClass& square_class, const Caps& caps = {});

Verdict check_injectivity(const Problem& problem, const CheckOptions& options = {});

/// Evidence that 0 lies in 𝓑(S*).
struct SignPairEvidence {
  SignVector tau;
  SignVector rho;  // all-zero without a left matrix
};
using WitnessEvidence = std::variant<DetAnalysis, SignPairEvidence>;

/// Exact B̂ and z certifying non-injectivity; throws Error if the evidence does
/// not produce a verified witness.
SingularWitness build_witness(const Problem& problem, const WitnessEvidence& evidence);

/// Positive x, y with x - y = w and ln x - ln y = v (hence x^B = y^B).
/// Requires B v = 0 exactly and σ(v) = σ(w).
MonomialLift lift_monomial_witness(const QMatrix& b, const QVector& v, const QVector& w);

/// Numerical re-check of a lift: x, y > 0, x - y = w and A(κ∗x^B) = A(κ∗y^B)
/// (A = identity when absent), both relative to `tol`.
bool verify_lift(const QMatrix& b, const QVector& w, const MonomialLift& lift, double tol = 1e-9,
                 const std::optional<QMatrix>& left = std::nullopt);

/// Exact re-check of a verdict's witness or certificate.
bool verify_certificate(const Verdict& verdict, const Problem& problem);

/// Exact re-check of a witness alone.
bool verify_witness(const SingularWitness& witness, const Problem& problem);

}  // namespace inj
