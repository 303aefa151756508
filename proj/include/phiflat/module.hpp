#pragma once

#include <string>
#include <vector>

#include "phiflat/ring.hpp"

namespace phiflat {

/// M = coker(A^s → A^g): `gens` generators, relation columns of length g.
struct PresentedModule {
  Ring ring;
  std::size_t gens = 0;
  std::vector<Vec> relations;

  static PresentedModule free(const Ring& ring, std::size_t rank);
  /// A/I on one generator.
  static PresentedModule cyclic(const Ideal& I);
  /// The ideal I ⊆ A presented on its generators by their syzygies.
  static PresentedModule ideal_module(const Ideal& I);

  FreeSubmodule relation_module() const { return {ring, gens, relations}; }
  /// Same generators, relations replaced by the canonical reduced basis.
  PresentedModule canonical() const;
  bool is_zero() const;
  /// Same generator count and equal relation modules.
  bool same_presentation(const PresentedModule& o) const;
  /// Relation matrix in row form (`rows = generators`).
  std::string str() const;
};

PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b);

/// Result of eliminating generators through relations with unit entries.
struct Pruned {
  PresentedModule module;
  /// Column i: image of old generator i in the new generators.
  Matrix projection;
};

Pruned prune(const PresentedModule& M);

/// Σ coeffs[i] * columns[i].
Vec combine(const Matrix& m, const Vec& coeffs, const RingPtr& ring);

}  // namespace phiflat

namespace phiflat {

/// All k×k minors of the g×s relation matrix, in lexicographic order of the
/// (row set, column set) pairs.  Zero minors are kept.
std::vector<Poly> minors(const PresentedModule& M, std::size_t k);

/// Fitt_i(M): the (g−i)-minors.  (1) when g−i ≤ 0, (0) when g−i exceeds the
/// number of relations.
Ideal fitting_ideal(const PresentedModule& M, std::size_t i);

}  // namespace phiflat
