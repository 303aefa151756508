#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "phiflat/blowup.hpp"
#include "phiflat/module.hpp"
#include "phiflat/phiring.hpp"

namespace phiflat {

/// Smallest i with Fitt_i(M) ≠ 0, i.e. the rank of M at the generic point.
/// Throws NotADomain unless the ring is known to be a domain.
std::size_t generic_rank(const PresentedModule& M);

struct FlatnessTest {
  bool flat = false;
  std::size_t rank = 0;
  /// Fitt_r(M) for r = generic_rank(M).  When not flat, this is the
  /// non-flat locus.
  Ideal locus;
};

/// Locally free iff Fitt_{r−1} = 0 and Fitt_r = (1); the first half holds by
/// the choice of r.  Throws NotADomain.
FlatnessTest is_flat_finite(const PresentedModule& M);

inline constexpr unsigned kDefaultMaxRounds = 5;

struct FlatteningProblem {
  PhiRing base;
  PresentedModule module;
  unsigned max_rounds = kDefaultMaxRounds;
};

enum class FlattenVerdict { Success, Unresolved, InputNotFlatOnU };

std::string verdict_name(FlattenVerdict v);

struct ChartNode {
  /// Chart indices taken from the root.
  std::vector<std::size_t> path;
  BlowUpSequence sequence;
  /// Strict transform on this chart (the input module at the root).
  PresentedModule module;
  unsigned saturation_exponent = 0;
  FlatnessTest test;

  /// Set when this chart was blown up further.
  std::optional<Ideal> center;
  unsigned center_exponent = 0;
  std::vector<ChartNode> children;

  const PhiRing& supports() const { return sequence.current(); }
  const Ring& ring() const { return sequence.current().base(); }
};

struct FlatteningCertificate {
  FlattenVerdict verdict = FlattenVerdict::Unresolved;
  /// Depth of the deepest chart.
  unsigned rounds = 0;
  FlatteningProblem problem;
  ChartNode root;

  /// InputNotFlatOnU: the non-admissible locus, where it was found, and a
  /// generator of the support product outside its radical.
  std::optional<Ideal> offending;
  std::vector<std::size_t> offending_path;
  std::optional<Poly> witness;
};

/// Blows up the support product first, then each chart's non-flat locus,
/// until every chart is flat or max_rounds is reached.  `threads` = 0 reads
/// PHIFLAT_THREADS (0 or unset: hardware concurrency).
FlatteningCertificate flatten(const FlatteningProblem& problem, unsigned threads = 0);

nlohmann::json ring_json(const Ring& R);
Ring ring_from_json(const nlohmann::json& j);
nlohmann::json module_json(const PresentedModule& M);
PresentedModule module_from_json(const Ring& R, const nlohmann::json& j);
nlohmann::json problem_json(const FlatteningProblem& p);
FlatteningProblem problem_from_json(const nlohmann::json& j);

nlohmann::json certificate_json(const FlatteningCertificate& cert);

struct Verification {
  bool valid = false;
  /// First divergence found, empty when valid.
  std::string divergence;
};

/// Replays every blow-up, strict transform, Fitting ideal and admissibility
/// exponent recorded in `cert` starting from `problem`.
Verification verify_certificate(const nlohmann::json& cert, const FlatteningProblem& problem);

}  // namespace phiflat
