#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phiflat/module.hpp"
#include "phiflat/phiring.hpp"
#include "phiflat/valuation.hpp"

namespace phiflat {

/// A local Φ-ring given by a monomial valuation v of rank k on Q[x] and a
/// split index j ∈ [1, k+1].  With v' the first j−1 coordinates of v:
///   B = {v' ≥ 0}, local with maximal ideal m = {v' > 0};
///   R = residue valuation ring, read off coordinates j..k;
///   A = preimage of R in B = {v ≥ 0};
/// and the admissible ideals of A are the principal ideals generated by
/// elements with v' = 0.  j = 1 makes B the fraction field.
struct PhiLocalModel {
  RingPtr ring;
  ValuationData valuation;
  std::size_t split = 1;

  /// split defaults to k, so that the last coordinate is the residue valuation.
  static PhiLocalModel make(RingPtr ring, ValuationData v,
                            std::optional<std::size_t> split = std::nullopt);

  Value value(const Poly& f) const { return valuation.value(f); }
  Value coarse(const Value& v) const { return v.slice(0, split - 1); }
  Value residue(const Value& v) const { return v.slice(split - 1, valuation.rank()); }

  bool in_A(const Poly& f) const { return value(f).nonnegative(); }
  bool in_m(const Poly& f) const { return coarse(value(f)).positive(); }
  /// Generates an admissible ideal: in A and a unit of B.
  bool is_admissible_element(const Poly& f) const;
};

/// Index of the generator of smallest value (first among ties); the ideal
/// they generate is admissible iff that generator has v' = 0.  Throws
/// NotAdmissible otherwise and InvalidArgument for generators outside A.
std::size_t admissible_gen(const PhiLocalModel& model, const std::vector<Poly>& gens);

struct StructureReport {
  std::size_t checks = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Pairs (I, g) with I given by generators.
using IdealElementPair = std::pair<std::vector<Poly>, Poly>;

/// Admissible principal ideals are those generated outside m; A/m is a
/// valuation ring of B/m whose comparisons match the value comparisons; and
/// I(A/m) ⊆ g(A/m) ⟺ I ⊆ gA for admissible (I, g).  Pairs are taken from
/// `pairs` and from all ordered pairs of samples.
StructureReport structure_check(const PhiLocalModel& model, const std::vector<Poly>& samples,
                                const std::vector<IdealElementPair>& pairs = {});

struct PushResult {
  /// v_S(P).
  Value w0;
  /// 1-based index of the first nonzero coordinate of w0 (k+1 if w0 = 0).
  std::size_t j = 1;
  /// {a : (v_1..v_{j−1})(a) > 0} in the base ring.
  Ideal p;
  /// Coordinates j..k, with the variables of p marked infinite.
  ValuationData R;
  /// No admissible ideal lies in p, decided by ideal membership.
  bool c_holds = false;
};

/// `S` must be nonnegative on the variables of the (polynomial) base of A.
/// Throws ZeroAdmissibleImage when v_S(P) = ∞.
PushResult push_valuation(const PhiRing& A, const ValuationData& S);

/// IR ⊆ gR ⟺ IS ⊆ gS for the pushed pair.  Empty when (I, g) is not
/// admissible in A.
std::optional<bool> push_property_d(const PushResult& push, const PhiRing& A,
                                    const ValuationData& S, const std::vector<Poly>& I,
                                    const Poly& g);

struct FlatVerdict {
  bool flat = false;
  /// "", "fitting" or "torsion".
  std::string reason;
  /// Rank of M ⊗ B when the Fitting test passes.
  std::optional<std::size_t> rank;
  /// For "fitting": generators of the Fitting ideal that fails to be (0) or (1).
  std::vector<Poly> fitting_witness;
  /// For "torsion": the element s and a torsion element t with s^N t = 0.
  std::optional<Poly> torsion_by;
  std::optional<Vec> torsion_element;
  std::vector<std::string> warnings;
};

/// M is given over Q[x] (entries in A); it is base-changed to the model.
/// Flat over A ⟺ M ⊗ B flat over B (Fitting criterion over the local ring
/// B) and M → M ⊗ B injective (no s-torsion for s in `s_gen`).
FlatVerdict flat_over_philocal(const PhiLocalModel& model, const PresentedModule& M,
                               const std::vector<Poly>& s_gen);

}  // namespace phiflat
