#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phiflat/module.hpp"
#include "phiflat/phiring.hpp"

namespace phiflat {

inline constexpr unsigned kDefaultClosureSteps = 32;

struct Torsion {
  /// (R : I^∞) ⊆ A^g where R is the relation module of M.
  FreeSubmodule saturated;
  /// Generators of the torsion submodule (saturated columns outside R).
  std::vector<Vec> generators;
  PresentedModule purified;
  unsigned exponent = 0;

  bool is_zero() const { return generators.empty(); }
};

/// Torsion with respect to a single ideal.
Torsion torsion_wrt(const PresentedModule& M, const Ideal& I);
/// Torsion with respect to the support family: saturation by its product.
Torsion torsion_H0(const PresentedModule& M, const PhiRing& A);
PresentedModule purify(const PresentedModule& M, const PhiRing& A);

/// Hom(I, M) as r-tuples (m_1..m_r) ∈ M^r, stored stacked in A^{g·r}:
/// block i holds the image of f_i.
struct HomModule {
  Ideal ideal;
  PresentedModule target;
  std::vector<Vec> elements;
  PresentedModule module;
  /// Column l: coefficients on `elements` of (f_1 e_l, ..., f_r e_l).
  Matrix canonical_map;

  std::size_t r() const { return ideal.gens().size(); }
  /// R^{⊕r}: the tuples that are zero in M^r.
  FreeSubmodule zero_tuples() const;
  /// Canonical image plus zero tuples.
  FreeSubmodule image_tuples() const;
};

/// Computed from the syzygies of the generators of I, so valid for any M.
HomModule hom_from_ideal(const Ideal& I, const PresentedModule& M);
/// Tuples satisfying f_i m_j = f_j m_i in M (as a submodule of A^{g·r},
/// zero tuples included).  Agrees with hom_from_ideal when M has no
/// I-torsion.
FreeSubmodule hom_cross_relations(const Ideal& I, const PresentedModule& M);

/// Stack r vectors of length g into one of length g·r.
Vec stack(const std::vector<Vec>& blocks);

struct DeepReport {
  bool deep = true;
  /// 1: torsion found, 2: a Hom generator outside the image.
  unsigned failed_degree = 0;
  std::optional<Ideal> failing_ideal;
  /// Torsion element of A^g, or an r-tuple in A^{g·r}.
  std::optional<Vec> witness;
};

DeepReport deep_report(const PresentedModule& M, unsigned d, const std::vector<Ideal>& family);
DeepReport deep_report(const PresentedModule& M, unsigned d, const PhiRing& A);
bool is_deep(const PresentedModule& M, unsigned d, const PhiRing& A);

struct Closure {
  PresentedModule module;
  /// Column l: image of generator l of M.
  Matrix structure_map;
  /// Stabilization index n: the result is C_n / f^n.
  unsigned steps = 0;
  bool torsion_free = true;
  /// Regular element; absent when the purification is zero.
  std::optional<Poly> regular;
  /// Numerators c_j of the unpruned generators c_j / f^n.
  std::vector<Vec> numerators;
  /// A numerator outside f^n A^g + S, when steps > 0.
  std::optional<Vec> extra;

  bool is_iso() const { return steps == 0 && torsion_free; }
};

Closure closure_wrt(const PresentedModule& M, const Ideal& I,
                    unsigned max_steps = kDefaultClosureSteps);
Closure closure(const PresentedModule& M, const PhiRing& A,
                unsigned max_steps = kDefaultClosureSteps);

struct CechResult {
  bool is_zero = true;
  std::optional<Vec> witness;
  /// Human-readable description of the witness class.
  std::string description;
};

CechResult cech_h(const PresentedModule& M, const Ideal& I, unsigned q,
                  unsigned max_steps = kDefaultClosureSteps);

struct MayerVietoris {
  bool intersection_ok = false;  // T_{I+I'} = T_I ∩ T_{I'}
  bool difference_ok = false;    // T_I + T_{I'} ⊆ T_{II'}
  bool middle_exact = false;     // kernel of (a,b) ↦ a − b is the diagonal image
  bool ok() const { return intersection_ok && difference_ok && middle_exact; }
};

MayerVietoris mayer_vietoris(const PresentedModule& M, const Ideal& I, const Ideal& I2);
bool mv_check(const PresentedModule& M, const Ideal& I, const Ideal& I2);

/// Requires I ⊆ J.  If H^q_I(M) = 0 for q < d then H^q_J(M) = 0 for q < d.
bool h_vanishing_transfer_check(const PresentedModule& M, const Ideal& I, const Ideal& J,
                                unsigned d, unsigned max_steps = kDefaultClosureSteps);

}  // namespace phiflat
