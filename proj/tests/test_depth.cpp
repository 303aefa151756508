#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "phiflat/depth.hpp"
#include "phiflat/error.hpp"

using namespace phiflat;

namespace {

Ring quv() { return Ring::polynomial(make_poly_ring({"u", "v"})); }

PhiRing origin(const Ring& A) { return make_phi_ring(A, {ideal_of(A, {"u", "v"})}); }

/// The ideal (u,v) presented by its Koszul relation.
PresentedModule max_ideal(const Ring& A) {
  return PresentedModule{A, 2, {{A.parse("v"), A.parse("-u")}}};
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

bool is_free_rank(const PresentedModule& M, std::size_t r) {
  Pruned p = prune(M);
  return p.module.gens == r && p.module.relations.empty();
}

}  // namespace

TEST_CASE("prune removes unit relations and tracks generators") {
  Ring A = quv();
  // e2 = u e1 via the relation (u, -1)
  PresentedModule M{A, 2, {{A.parse("u"), A.parse("-1")}, {A.parse("v^2"), A.parse("0")}}};
  Pruned p = prune(M);
  CHECK(p.module.gens == 1);
  REQUIRE(p.module.relations.size() == 1);
  CHECK(p.module.relations[0][0].str() == "v^2");
  CHECK(p.projection.columns[0][0].str() == "1");
  CHECK(p.projection.columns[1][0].str() == "u");

  CHECK(prune(PresentedModule{A, 1, {{A.parse("3")}}}).module.gens == 0);
  CHECK(PresentedModule{A, 1, {{A.parse("3")}}}.is_zero());
  CHECK(max_ideal(A).str() == "coker [[v], [-u]]");
}

TEST_CASE("torsion_H0 and purify examples") {
  Ring A = quv();
  PhiRing a = origin(A);
  PresentedModule M{A, 1, {{A.parse("u^2")}, {A.parse("u*v")}}};
  Torsion T = torsion_H0(M, a);
  REQUIRE(T.generators.size() == 1);
  CHECK(T.generators[0][0].str() == "u");
  CHECK(purify(M, a).same_presentation(PresentedModule::cyclic(ideal_of(A, {"u"}))));
  // oracle: monomial saturation (u^2, uv) : (u,v)^∞ = (u)
  std::vector<Monomial> gens{Monomial({2, 0}), Monomial({1, 1})};
  CHECK(oracle::monomial_in_max_saturation(Monomial({1, 0}), gens));
  CHECK_FALSE(oracle::monomial_in_max_saturation(Monomial({0, 1}), gens));

  CHECK(torsion_H0(PresentedModule::free(A, 1), a).is_zero());
  PresentedModule k = PresentedModule::cyclic(ideal_of(A, {"u", "v"}));
  CHECK(purify(k, a).is_zero());
  CHECK(purify(PresentedModule::free(A, 0), a).is_zero());
}

TEST_CASE("hom_from_ideal examples") {
  Ring A = quv();
  Ideal m = ideal_of(A, {"u", "v"});
  HomModule H = hom_from_ideal(m, PresentedModule::free(A, 1));
  CHECK(is_free_rank(H.module, 1));
  // syzygy oracle: v m1 = u m2 forces (m1, m2) = c (u, v)
  FreeSubmodule expected{A, 2, {{A.parse("u"), A.parse("v")}}};
  CHECK(FreeSubmodule{A, 2, H.elements} == expected);
  CHECK(H.image_tuples() == expected);

  PresentedModule M{A, 1, {{A.parse("u^2")}}};
  HomModule unit = hom_from_ideal(Ideal::unit(A), M);
  CHECK(prune(unit.module).module.same_presentation(M));

  HomModule H2 = hom_from_ideal(m, max_ideal(A));
  CHECK(is_free_rank(H2.module, 1));
  // ψ with ψ(u) = e1 (the element u), ψ(v) = e2: "multiplication by 1"
  Vec psi{A.parse("1"), A.parse("0"), A.parse("0"), A.parse("1")};
  FreeSubmodule all{A, 4, H2.elements};
  for (const auto& z : H2.zero_tuples().columns) all.columns.push_back(z);
  CHECK(all.contains(psi));
  CHECK_FALSE(H2.image_tuples().contains(psi));
}

TEST_CASE("is_deep examples") {
  Ring A = quv();
  PhiRing a = origin(A);
  CHECK(is_deep(PresentedModule::free(A, 1), 2, a));
  DeepReport r = deep_report(max_ideal(A), 2, a);
  CHECK_FALSE(r.deep);
  CHECK(r.failed_degree == 2);
  REQUIRE(r.witness.has_value());
  // the witness is ψ = 1 up to the image and a unit
  HomModule H = hom_from_ideal(ideal_of(A, {"u", "v"}), max_ideal(A));
  FreeSubmodule span = H.image_tuples();
  span.columns.push_back(*r.witness);
  CHECK(span.contains(Vec{A.parse("1"), A.parse("0"), A.parse("0"), A.parse("1")}));

  CHECK(is_deep(PresentedModule::cyclic(ideal_of(A, {"u"})), 1, a));
  CHECK_FALSE(is_deep(PresentedModule::cyclic(ideal_of(A, {"u^2", "u*v"})), 1, a));
  CHECK(code_of([&] { is_deep(PresentedModule::free(A, 1), 3, a); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("closure examples") {
  Ring A = quv();
  PhiRing a = origin(A);
  Closure c = closure(max_ideal(A), a);
  CHECK(c.steps == 1);
  CHECK(is_free_rank(c.module, 1));
  REQUIRE(c.module.gens == 1);
  // structure map is the inclusion: e1 ↦ u, e2 ↦ v (up to a unit)
  Poly s1 = c.structure_map.columns[0][0], s2 = c.structure_map.columns[1][0];
  CHECK(s1.total_degree() == 1);
  CHECK((s1 * A.parse("v") - s2 * A.parse("u")).is_zero());

  Closure id = closure(PresentedModule::free(A, 1), a);
  CHECK(id.is_iso());
  CHECK(id.module.same_presentation(PresentedModule::free(A, 1)));

  Closure zero = closure(PresentedModule::cyclic(ideal_of(A, {"u", "v"})), a);
  CHECK(zero.module.is_zero());
  CHECK(zero.structure_map.columns.size() == 1);

  PresentedModule line = PresentedModule::cyclic(ideal_of(A, {"u"}));
  CHECK(code_of([&] { closure(line, a, 4); }) == ErrorCode::NotStabilized);

  CHECK(code_of([&] { closure(max_ideal(A), a, 1); }) == ErrorCode::NotStabilized);
}

TEST_CASE("cech_h examples") {
  Ring A = quv();
  Ideal m = ideal_of(A, {"u", "v"});
  CHECK(cech_h(PresentedModule::free(A, 1), m, 1).is_zero);
  CechResult r = cech_h(max_ideal(A), m, 1);
  CHECK_FALSE(r.is_zero);
  REQUIRE(r.witness.has_value());
  CHECK(r.description.find("/ (u)^1") != std::string::npos);
  CechResult t = cech_h(PresentedModule::cyclic(m), m, 0);
  CHECK_FALSE(t.is_zero);
  CHECK(t.witness->at(0).str() == "1");
  CHECK(code_of([&] { cech_h(PresentedModule::free(A, 1), m, 2); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("mv_check examples") {
  Ring A = quv();
  PresentedModule M = PresentedModule::cyclic(ideal_of(A, {"u*v"}));
  MayerVietoris mv = mayer_vietoris(M, ideal_of(A, {"u"}), ideal_of(A, {"v"}));
  CHECK(mv.intersection_ok);
  CHECK(mv.difference_ok);
  CHECK(mv.middle_exact);
  CHECK(mv_check(PresentedModule::free(A, 2), ideal_of(A, {"u"}), ideal_of(A, {"v"})));
  PresentedModule sq = PresentedModule::cyclic(ideal_of(A, {"u^2"}));
  CHECK(torsion_wrt(sq, ideal_of(A, {"u"})).saturated.is_whole());
  CHECK(mv_check(sq, ideal_of(A, {"u"}), ideal_of(A, {"u"})));
}

TEST_CASE("h_vanishing_transfer_check examples") {
  Ring A = quv();
  PresentedModule F = PresentedModule::free(A, 1);
  CHECK(h_vanishing_transfer_check(F, ideal_of(A, {"u", "v"}), ideal_of(A, {"u", "v", "u + 1"}), 2));
  CHECK(h_vanishing_transfer_check(F, ideal_of(A, {"u"}), ideal_of(A, {"u", "v"}), 1));
  Ideal m = ideal_of(A, {"u", "v"});
  CHECK(h_vanishing_transfer_check(max_ideal(A), m, m.pow(2) + m, 1));
  CHECK(code_of([&] { h_vanishing_transfer_check(F, m, ideal_of(A, {"u"}), 1); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("property: monomial torsion agrees with the combinatorial oracle") {
  std::mt19937 rng(5);
  Ring A = quv();
  PhiRing a = origin(A);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Monomial> gens;
    std::vector<Poly> polys;
    int k = gen::pick(rng, 1, 3);
    for (int i = 0; i < k; ++i) {
      Monomial m({gen::pick(rng, 0, 3), gen::pick(rng, 0, 3)});
      if (m.is_one()) continue;
      gens.push_back(m);
      polys.push_back(Poly::term(A.poly(), m, 1));
    }
    if (gens.empty()) continue;
    Torsion T = torsion_H0(PresentedModule::cyclic(Ideal(A, polys)), a);
    for (const auto& m : oracle::monomials_up_to(2, 6)) {
      Vec v{Poly::term(A.poly(), m, 1)};
      CHECK(T.saturated.contains(v) == oracle::monomial_in_max_saturation(m, gens));
    }
  }
}

TEST_CASE("property: purify, closure and Hom invariants on random modules") {
  std::mt19937 rng(17);
  Ring A = quv();
  PhiRing a = origin(A);
  PhiRing single = make_phi_ring(A, {a.product()});
  for (int trial = 0; trial < 16; ++trial) {
    PresentedModule M = gen::monomial_module(A, rng, trial % 4);
    PresentedModule pur = purify(M, a);
    CHECK(is_deep(pur, 1, a));
    CHECK(purify(pur, a).same_presentation(pur));

    // the two Hom routes agree on 1-deep modules
    for (const auto& I : {a.product(), ideal_of(A, {"u^2", "v"})}) {
      HomModule H = hom_from_ideal(I, pur);
      FreeSubmodule cross = hom_cross_relations(I, pur);
      FreeSubmodule mine = H.zero_tuples();
      for (const auto& h : H.elements) mine.columns.push_back(h);
      CHECK(mine == cross);
    }

    Closure c = closure(M, a);
    CHECK(is_deep(c.module, 2, a));
    CHECK(is_deep(c.module, 2, a) == is_deep(c.module, 2, single));
    CHECK(is_deep(M, 2, a) == is_deep(M, 2, single));
    Closure again = closure(c.module, a);
    CHECK(again.is_iso());
    CHECK(cech_h(M, a.product(), 0).is_zero == torsion_wrt(M, a.product()).is_zero());
    CHECK(cech_h(pur, a.product(), 1).is_zero == (c.steps == 0));
  }
}

TEST_CASE("property: Mayer-Vietoris fragment on random triples") {
  std::mt19937 rng(23);
  Ring A = quv();
  for (int trial = 0; trial < 10; ++trial) {
    PresentedModule M = gen::monomial_module(A, rng, gen::pick(rng, 0, 4));
    auto ideal = [&] {
      std::vector<Poly> g{gen::mono(A, gen::pick(rng, 0, 2), gen::pick(rng, 0, 2))};
      if (gen::pick(rng, 0, 1)) g.push_back(gen::mono(A, gen::pick(rng, 0, 2), gen::pick(rng, 0, 2)));
      return Ideal(A, g);
    };
    CHECK(mv_check(M, ideal(), ideal()));
  }
}
