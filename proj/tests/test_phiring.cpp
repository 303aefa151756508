#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "phiflat/error.hpp"
#include "phiflat/phiring.hpp"

using namespace phiflat;

namespace {

Ring quv() { return Ring::polynomial(make_poly_ring({"u", "v"})); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("make_phi_ring examples") {
  Ring A = quv();
  PhiRing a = make_phi_ring(A, {ideal_of(A, {"u", "v"})});
  CHECK(a.product() == ideal_of(A, {"u", "v"}));
  PhiRing b = make_phi_ring(A, {ideal_of(A, {"u"}), ideal_of(A, {"v"})});
  CHECK(b.product() == ideal_of(A, {"u*v"}));

  RingPtr P = make_poly_ring({"u", "v"});
  Ring Q(P, {parse_poly(P, "u")});
  CHECK(code_of([&] { make_phi_ring(Q, {ideal_of(Q, {"u"})}); }) == ErrorCode::ZeroSupport);
  CHECK(make_phi_ring(Q, {ideal_of(Q, {"u"})}, true).zero_support());
  CHECK(code_of([&] { make_phi_ring(A, {}); }) == ErrorCode::EmptyFamily);
}

TEST_CASE("is_admissible examples") {
  Ring A = quv();
  PhiRing a = make_phi_ring(A, {ideal_of(A, {"u", "v"})});
  auto r1 = is_admissible(a, ideal_of(A, {"u", "v"}).pow(2));
  CHECK(r1.admissible);
  CHECK(r1.exponent == 2u);

  auto r2 = is_admissible(a, ideal_of(A, {"u"}));
  CHECK_FALSE(r2.admissible);
  CHECK_FALSE(r2.exponent.has_value());
  REQUIRE(r2.witness.has_value());
  CHECK(r2.witness->str() == "v");
  // independent route: v is not in √(u)
  CHECK_FALSE(oracle::rabinowitsch_radical(A.parse("v"), {A.parse("u")}));

  auto r3 = is_admissible(a, ideal_of(A, {"u + v^2", "v"}));
  CHECK(r3.admissible);
  REQUIRE(r3.exponent.has_value());
  CHECK(*r3.exponent <= 2u);
  CHECK(ideal_of(A, {"u + v^2", "v"}).contains(A.parse("u")));

  Ring B = Ring::polynomial(make_poly_ring({"x"}));
  CHECK(code_of([&] { is_admissible(a, ideal_of(B, {"x"})); }) == ErrorCode::RingMismatch);
}

TEST_CASE("exponent cap reports unknown exponent honestly") {
  Ring T = Ring::polynomial(make_poly_ring({"t"}));
  PhiRing a = make_phi_ring(T, {ideal_of(T, {"t"})});
  auto r = is_admissible(a, ideal_of(T, {"t^5"}), 3);
  CHECK(r.admissible);
  CHECK(r.exponent_unknown);
  CHECK_FALSE(r.exponent.has_value());
  CHECK(is_admissible(a, ideal_of(T, {"t^5"})).exponent == 5u);
}

TEST_CASE("is_phi_morphism examples") {
  Ring A = quv();
  PhiRing a = make_phi_ring(A, {ideal_of(A, {"u", "v"})});
  CHECK(is_phi_morphism({a, a, {A.parse("u"), A.parse("v")}}));

  Ring T = Ring::polynomial(make_poly_ring({"t"}));
  PhiRing t = make_phi_ring(T, {ideal_of(T, {"t"})});
  CHECK(is_phi_morphism({t, t, {T.parse("t^2")}}));

  RingPtr P = make_poly_ring({"s", "t"});
  Ring ST(P, {parse_poly(P, "s*t")}, false);
  PhiRing st = make_phi_ring(ST, {ideal_of(ST, {"s"})}, true);
  CHECK_FALSE(is_phi_morphism({t, st, {ST.parse("t")}}));
  // t ↦ s is fine: (s) is the support itself
  CHECK(is_phi_morphism({t, st, {ST.parse("s")}}));

  // s*t = 0 must map to zero: s ↦ 1, t ↦ 1 is not a ring map from Q[s,t]/(st)
  PhiRing st2 = make_phi_ring(ST, {ideal_of(ST, {"s"})}, true);
  CHECK(code_of([&] { is_phi_morphism({st2, t, {T.parse("1"), T.parse("1")}}); }) ==
        ErrorCode::MalformedMorphism);
}

TEST_CASE("induced_supports examples") {
  Ring A = quv();
  PhiRing a = make_phi_ring(A, {ideal_of(A, {"u", "v"})});
  Ring C = Ring::polynomial(make_poly_ring({"u", "t"}));
  RingMap chart{A, C, {C.parse("u"), C.parse("u*t")}};
  PhiRing c = induced_supports(chart, a);
  REQUIRE(c.phi0().size() == 1);
  CHECK(c.phi0()[0] == ideal_of(C, {"u"}));

  PhiRing same = induced_supports(RingMap::identity(A), a);
  CHECK(same.phi0()[0] == a.phi0()[0]);

  RingPtr P = make_poly_ring({"u", "v"});
  Ring Z(P, {parse_poly(P, "1")});
  RingMap to_zero{A, Z, {Z.parse("u"), Z.parse("v")}};
  CHECK(code_of([&] { induced_supports(to_zero, a); }) == ErrorCode::ZeroSupport);
  CHECK(induced_supports(to_zero, a, true).zero_support());
}

TEST_CASE("property: admissible ideals closed under products and supersets") {
  std::mt19937 rng(11);
  RingPtr R = make_poly_ring({"x", "y", "z"});
  Ring A = Ring::polynomial(R);
  PhiRing a = make_phi_ring(A, {ideal_of(A, {"x", "y"}), ideal_of(A, {"x", "z"})});
  PhiRing single = make_phi_ring(A, {a.product()});
  int admissible_seen = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto make = [&] {
      std::vector<Poly> g;
      int k = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int i = 0; i < k; ++i) g.push_back(oracle::random_monomial(R, rng, 1, 3));
      return Ideal(A, g);
    };
    Ideal I = make(), I2 = make();
    auto ra = is_admissible(a, I);
    // invariant under replacing the family by its product
    CHECK(ra.admissible == is_admissible(single, I).admissible);
    if (!ra.admissible) continue;
    ++admissible_seen;
    REQUIRE(ra.exponent.has_value());
    CHECK(power_contained(a.product(), *ra.exponent, I));
    if (*ra.exponent > 1) CHECK_FALSE(power_contained(a.product(), *ra.exponent - 1, I));
    Ideal sup = I + Ideal(A, {oracle::random_poly(R, rng, 2, 2)});
    CHECK(is_admissible(a, sup).admissible);
    if (is_admissible(a, I2).admissible) CHECK(is_admissible(a, I * I2).admissible);
  }
  CHECK(admissible_seen > 3);
}
