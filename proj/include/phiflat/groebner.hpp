#pragma once

#include <cstdint>
#include <vector>

#include "phiflat/poly.hpp"

namespace phiflat::gb {

/// Term of a free-module element: monomial times basis vector e_comp.
struct VTerm {
  Monomial mono;
  uint32_t comp;
  Rational coeff;
};

/// Sparse module element, terms sorted descending in position-over-term
/// order: lower component index is larger, ties broken by the monomial order.
using SVec = std::vector<VTerm>;

struct ModuleOrder {
  MonomialOrder mono;
  int compare(const VTerm& a, const VTerm& b) const {
    if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
    return mono.compare(a.mono, b.mono);
  }
};

/// Reduced Gröbner basis of a submodule of R^rank (rank 1 for ideals).
struct Basis {
  std::size_t nvars = 0;
  std::size_t rank = 0;
  ModuleOrder order;
  /// Monic, interreduced, sorted ascending by leading term.
  std::vector<SVec> elems;

  bool is_whole() const;
};

SVec to_svec(const Vec& v);
Vec to_vec(const SVec& s, const RingPtr& ring, std::size_t rank);

/// Buchberger with the chain criterion (and the coprime criterion when
/// rank == 1).  Returns the reduced basis.
Basis groebner(std::vector<SVec> gens, std::size_t nvars, std::size_t rank,
               const MonomialOrder& order);

/// Full normal form of `v` modulo `basis`.
SVec normal_form(const SVec& v, const Basis& basis);

bool reduces_to_zero(const SVec& v, const Basis& basis);

/// Equality of reduced bases (hence of the generated submodules).
bool same_basis(const Basis& a, const Basis& b);

}  // namespace phiflat::gb
