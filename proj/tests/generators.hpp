#pragma once
// Hand-rolled random inputs shared by the property tests and the acceptance
// runner.

#include <random>

#include "phiflat/module.hpp"

namespace gen {

using phiflat::Monomial;
using phiflat::Poly;
using phiflat::PresentedModule;
using phiflat::Ring;
using phiflat::Vec;

inline int pick(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Poly mono(const Ring& A, int a, int b) {
  return Poly::term(A.poly(), Monomial(std::vector<int32_t>{a, b}), 1);
}

/// Over QQ[u,v].  kinds:
///   0  coker of a column (u^a, v^b): torsion free of rank 1
///   1  cyclic with relations containing powers of u and v (finite length)
///   2  kind 0 plus a kind 1 summand
///   3  coker of a column (u^a, v^b, u^c v^d) on three generators
///   4  cyclic with a height-one relation u^a v^b (purification not
///      finite over its closure)
inline PresentedModule monomial_module(const Ring& A, std::mt19937& rng, int kind) {
  switch (kind) {
    case 0:
      return PresentedModule{A, 2, {{mono(A, pick(rng, 1, 3), 0), mono(A, 0, pick(rng, 1, 3))}}};
    case 1: {
      PresentedModule M{A, 1, {{mono(A, pick(rng, 1, 3), 0)}, {mono(A, 0, pick(rng, 1, 3))}}};
      if (pick(rng, 0, 1)) M.relations.push_back({mono(A, pick(rng, 1, 2), pick(rng, 0, 2))});
      return M;
    }
    case 2:
      return phiflat::direct_sum(monomial_module(A, rng, 0), monomial_module(A, rng, 1));
    case 3:
      return PresentedModule{A, 3,
                             {{mono(A, pick(rng, 1, 2), 0), mono(A, 0, pick(rng, 1, 2)),
                               mono(A, pick(rng, 0, 1), pick(rng, 0, 1))}}};
    default: {
      int a = pick(rng, 0, 2), b = pick(rng, 0, 2);
      if (a + b == 0) a = 1;
      return PresentedModule{A, 1, {{mono(A, a, b)}}};
    }
  }
}

}  // namespace gen
