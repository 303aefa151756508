#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "phiflat/error.hpp"
#include "phiflat/valuative.hpp"

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

Value val(std::initializer_list<int64_t> w) { return {false, w}; }

std::vector<Poly> polys(const Ring& A, std::initializer_list<const char*> s) {
  std::vector<Poly> out;
  for (auto t : s) out.push_back(A.parse(t));
  return out;
}

}  // namespace

TEST_CASE("point_is_admissible examples") {
  Ring A = quv();
  PhiRing a = make_phi_ring(A, {ideal_of(A, {"u", "v"})});
  auto p12 = ValuativePoint::make(A, ValuationData({{1, 2}}));
  CHECK(point_is_admissible(p12, a));
  CHECK(p12.valuation.value(a.product().gens()) == val({1}));

  auto dead = ValuativePoint::make(A, ValuationData({{1, 2}}, {true, false}));
  PhiRing au = make_phi_ring(A, {ideal_of(A, {"u"})});
  CHECK_FALSE(point_is_admissible(dead, au));

  auto p01 = ValuativePoint::make(A, ValuationData({{0, 1}}));
  CHECK(point_is_admissible(p01, au));
  CHECK(p01.valuation.value(au.product().gens()) == val({0}));

  RingPtr P = make_poly_ring({"u", "v"});
  CHECK(code_of([&] { ValuativePoint::make(Ring(P, {parse_poly(P, "u*v")}), ValuationData({{1, 1}})); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("in_basic_open examples") {
  Ring A = quv();
  PhiRing a = make_phi_ring(A, {ideal_of(A, {"u", "v"})});
  auto pt = ValuativePoint::make(A, ValuationData({{1, 2}}));
  CHECK(in_basic_open(pt, BasicOpen::make(a, polys(A, {"u", "v"}), A.parse("u"))));
  CHECK_FALSE(in_basic_open(pt, BasicOpen::make(a, polys(A, {"u", "v"}), A.parse("v"))));
  CHECK(in_basic_open(pt, BasicOpen::make(a, polys(A, {"u", "v"}), A.one())));
  CHECK(code_of([&] { BasicOpen::make(a, polys(A, {"u"}), A.parse("u^2")); }) == ErrorCode::NotAdmissible);
}

TEST_CASE("select_chart examples") {
  Ring A = quv();
  auto lex = ValuativePoint::make(A, ValuationData({{1, 0}, {0, 1}}));
  CHECK(select_chart(lex, polys(A, {"u", "v"})) == 1);
  auto p12 = ValuativePoint::make(A, ValuationData({{1, 2}}));
  CHECK(select_chart(p12, polys(A, {"u", "v"})) == 0);
  CHECK(select_chart(p12, polys(A, {"u", "u"})) == 0);
  CHECK(code_of([&] { select_chart(p12, polys(A, {"0"})); }) == ErrorCode::InfiniteValue);
}

TEST_CASE("trace_through_blowups examples") {
  Ring A = quv();
  PhiRing a = make_phi_ring(A, {ideal_of(A, {"u", "v"})});
  auto pt = ValuativePoint::make(A, ValuationData({{1, 2}}));
  auto tr = trace_through_blowups(pt, a, {{"u", "v"}, {"u", "t2"}});
  REQUIRE(tr.size() == 2);
  CHECK(tr[0].chart == 0);
  CHECK(tr[0].ring.poly()->vars() == std::vector<std::string>{"u", "t2"});
  CHECK(tr[0].values == std::vector<Value>{val({1}), val({1})});
  CHECK(tr[1].chart == 0);
  CHECK(tr[1].ring.poly()->vars() == std::vector<std::string>{"u", "t2_2"});
  CHECK(tr[1].values[1] == val({0}));
  CHECK(trace_through_blowups(pt, a, {}).empty());
}

TEST_CASE("non-monomial centers are evaluated exactly") {
  Ring A = quv();
  PhiRing a = make_phi_ring(A, {ideal_of(A, {"u", "v"})});
  auto pt = ValuativePoint::make(A, ValuationData({{1, 2}}));
  // t2 = (v + u)/u = 1 + v/u has value 0, and t2 − 1 = v/u has value 1
  auto tr = trace_through_blowups(pt, a, {{"u", "v + u"}});
  REQUIRE(tr.size() == 1);
  ChartPoint c = ChartPoint::at_root(pt);
  BlowUpChart ch = rees_chart(A, ideal_of(A, {"u", "v + u"}), 0);
  ChartPoint pulled = c.pull(ch);
  CHECK(pulled.value(ch.ring.parse("t2")) == val({0}));
  CHECK(pulled.value(ch.ring.parse("t2 - 1")) == val({1}));
}

TEST_CASE("property: chart cover, nonnegative transforms and products of opens") {
  std::mt19937 rng(13);
  Ring A = quv();
  PhiRing a = make_phi_ring(A, {ideal_of(A, {"u", "v"})});
  for (int trial = 0; trial < 20; ++trial) {
    ValuationData V({{gen::pick(rng, 1, 3), gen::pick(rng, 1, 3)}, {gen::pick(rng, 0, 2), gen::pick(rng, 0, 2)}});
    auto pt = ValuativePoint::make(A, V);
    REQUIRE(point_is_admissible(pt, a));
    std::vector<std::string> center{"u^" + std::to_string(gen::pick(rng, 1, 2)),
                                    "v^" + std::to_string(gen::pick(rng, 1, 2)), "u*v"};
    auto tr = trace_through_blowups(pt, a, {center});
    for (const auto& v : tr[0].values) CHECK(v.nonnegative());

    auto I = polys(A, {"u", "v"});
    auto J = polys(A, {"u^2", "v"});
    Poly g = A.parse("u"), h = A.parse("v");
    BasicOpen o1 = BasicOpen::make(a, I, g), o2 = BasicOpen::make(a, J, h);
    std::vector<Poly> IJ;
    for (const auto& x : I)
      for (const auto& y : J) IJ.push_back(x * y);
    BasicOpen o12 = BasicOpen::make(a, IJ, g * h);
    if (in_basic_open(pt, o1) && in_basic_open(pt, o2)) CHECK(in_basic_open(pt, o12));
  }
  RingPtr P = make_poly_ring({"u", "v"});
  Ring Z(P, {parse_poly(P, "u*v")});
  PhiRing z = make_phi_ring(Z, {ideal_of(Z, {"u*v"})}, true);
  CHECK(z.zero_support());
  // no point can see a zero support product
  CHECK(ValuationData({{1, 1}}).value(z.product().gens()).infinite);
}
