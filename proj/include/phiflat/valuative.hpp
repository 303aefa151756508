#pragma once

#include <string>
#include <vector>

#include "phiflat/blowup.hpp"
#include "phiflat/phiring.hpp"
#include "phiflat/valuation.hpp"

namespace phiflat {

/// A point of the valuative space over a polynomial base, modeled by a
/// monomial valuation.
struct ValuativePoint {
  Ring base;
  ValuationData valuation;

  /// Throws InvalidArgument for quotient bases and RingMismatch on size.
  static ValuativePoint make(const Ring& base, ValuationData v);
  Value value(const Poly& f) const { return valuation.value(f); }
};

/// v(P) < ∞.
bool point_is_admissible(const ValuativePoint& pt, const PhiRing& A);

/// U(g⁻¹I): the points with v(I) ≥ v(g).
struct BasicOpen {
  std::vector<Poly> I;
  Poly g;

  /// Throws NotAdmissible unless (I, g) is admissible in A.
  static BasicOpen make(const PhiRing& A, std::vector<Poly> I, Poly g);
};

bool in_basic_open(const ValuativePoint& pt, const BasicOpen& bo);

/// Smallest index attaining the minimum value.  Throws InfiniteValue when
/// every generator has value ∞.
std::size_t select_chart(const std::vector<Value>& values);
std::size_t select_chart(const ValuativePoint& pt, const std::vector<Poly>& gens);

/// The point seen on a chart ring: each chart variable is a fraction
/// num/den of base polynomials, and values are computed in the fraction
/// field of the base.
struct ChartPoint {
  ValuativePoint root;
  Ring ring;
  std::vector<Poly> num;
  std::vector<Poly> den;

  static ChartPoint at_root(const ValuativePoint& pt);
  Value value(const Poly& h) const;
  /// The point on `chart`, a chart of this point's ring.
  ChartPoint pull(const BlowUpChart& chart) const;
};

struct TraceStep {
  std::size_t chart = 0;
  Ring ring;
  /// Values of the chart variables, in ring order.
  std::vector<Value> values;
  /// Value of the exceptional element, which equals v(center).
  Value exceptional;
};

/// Blows up each center in turn (parsed in the current chart ring), always
/// following the chart selected by the point.
std::vector<TraceStep> trace_through_blowups(const ValuativePoint& pt, const PhiRing& A,
                                             const std::vector<std::vector<std::string>>& centers);

}  // namespace phiflat
