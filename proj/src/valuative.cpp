#include "phiflat/valuative.hpp"

#include <algorithm>

#include "phiflat/error.hpp"

namespace phiflat {

ValuativePoint ValuativePoint::make(const Ring& base, ValuationData v) {
  if (base.is_quotient())
    throw Error(ErrorCode::InvalidArgument, "valuative points live over polynomial bases");
  if (v.nvars() != base.nvars())
    throw Error(ErrorCode::RingMismatch, "valuation does not match " + base.str());
  return ValuativePoint{base, std::move(v)};
}

bool point_is_admissible(const ValuativePoint& pt, const PhiRing& A) {
  require_same_ring(pt.base, A.base(), "point_is_admissible");
  return !pt.valuation.value(A.product().gens()).infinite;
}

BasicOpen BasicOpen::make(const PhiRing& A, std::vector<Poly> I, Poly g) {
  std::vector<Poly> gens = I;
  gens.push_back(g);
  if (!is_admissible(A, Ideal(A.base(), gens)).admissible)
    throw Error(ErrorCode::NotAdmissible, "(I, g) is not admissible");
  return BasicOpen{std::move(I), std::move(g)};
}

bool in_basic_open(const ValuativePoint& pt, const BasicOpen& bo) {
  return pt.valuation.value(bo.I) >= pt.valuation.value(bo.g);
}

std::size_t select_chart(const std::vector<Value>& values) {
  if (values.empty()) throw Error(ErrorCode::InfiniteValue, "empty center");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[best]) best = i;
  if (values[best].infinite) throw Error(ErrorCode::InfiniteValue, "the center has value inf");
  return best;
}

std::size_t select_chart(const ValuativePoint& pt, const std::vector<Poly>& gens) {
  std::vector<Value> vals;
  for (const auto& f : gens) vals.push_back(pt.value(f));
  return select_chart(vals);
}

ChartPoint ChartPoint::at_root(const ValuativePoint& pt) {
  ChartPoint c{pt, pt.base, {}, {}};
  for (std::size_t i = 0; i < pt.base.nvars(); ++i) {
    c.num.push_back(pt.base.var(i));
    c.den.push_back(pt.base.one());
  }
  return c;
}

namespace {

/// h(num/den) = N/D over the root base.
std::pair<Poly, Poly> evaluate(const ChartPoint& c, const Poly& h) {
  const std::size_t n = c.num.size();
  std::vector<int32_t> top(n, 0);
  for (const auto& t : h.terms())
    for (std::size_t k = 0; k < n; ++k) top[k] = std::max(top[k], t.mono[k]);
  Poly D = c.root.base.one();
  for (std::size_t k = 0; k < n; ++k) D = D * c.den[k].pow(top[k]);
  Poly N = c.root.base.zero();
  for (const auto& t : h.terms()) {
    Poly term = Poly::constant(c.root.base.poly(), t.coeff);
    for (std::size_t k = 0; k < n; ++k)
      term = term * c.num[k].pow(t.mono[k]) * c.den[k].pow(top[k] - t.mono[k]);
    N = N + term;
  }
  return {N, D};
}

}  // namespace

Value ChartPoint::value(const Poly& h) const {
  auto [N, D] = evaluate(*this, ring.reduce(h));
  return root.value(N) - root.value(D);
}

ChartPoint ChartPoint::pull(const BlowUpChart& chart) const {
  require_same_ring(ring, chart.parent, "chart point");
  ChartPoint out{root, chart.ring, {}, {}};
  auto [Ni, Di] = evaluate(*this, chart.center.gens()[chart.index]);
  for (long o : chart.origin) {
    if (o >= 0) {
      out.num.push_back(num[o]);
      out.den.push_back(den[o]);
    } else {
      auto [Nj, Dj] = evaluate(*this, chart.center.gens()[-o - 1]);
      out.num.push_back(Nj * Di);
      out.den.push_back(Dj * Ni);
    }
  }
  return out;
}

std::vector<TraceStep> trace_through_blowups(const ValuativePoint& pt, const PhiRing& A,
                                             const std::vector<std::vector<std::string>>& centers) {
  require_same_ring(pt.base, A.base(), "trace_through_blowups");
  std::vector<TraceStep> out;
  BlowUpSequence seq{A, {}};
  ChartPoint cur = ChartPoint::at_root(pt);
  for (const auto& texts : centers) {
    const Ring& R = seq.current().base();
    std::vector<Poly> gens;
    std::vector<Value> vals;
    for (const auto& s : texts) {
      gens.push_back(R.parse(s));
      vals.push_back(cur.value(gens.back()));
    }
    std::size_t i = select_chart(vals);
    seq = compose(seq, Ideal(R, gens), i);
    cur = cur.pull(seq.stages.back().chart);
    TraceStep step{i, cur.ring, {}, vals[i]};
    for (std::size_t k = 0; k < cur.ring.nvars(); ++k) step.values.push_back(cur.value(cur.ring.var(k)));
    out.push_back(std::move(step));
  }
  return out;
}

}  // namespace phiflat
