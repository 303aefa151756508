#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phiflat/module.hpp"
#include "phiflat/phiring.hpp"

namespace phiflat {

/// "t<j>" at depth 1, "t<j>_<depth>" deeper; j is the 1-based generator index.
std::string chart_variable_name(std::size_t j, std::size_t depth);

/// The chart of the blow-up of A along I = (f_1..f_r) on which f_i generates
/// I: A_i = A[t_j : j ≠ i] / ((f_j − t_j f_i) : f_i^∞), with variables that
/// occur linearly in a relation eliminated.
struct BlowUpChart {
  Ring parent;
  Ideal center;
  std::size_t index = 0;
  std::size_t depth = 1;
  Ring ring;
  RingMap structure;
  Poly exceptional;
  /// Per chart variable: the parent variable it equals (≥ 0), or −(j+1) for
  /// the new variable t_j = f_j / f_i.
  std::vector<long> origin;
  /// Images in the chart ring of all of f_1..f_r.
  std::vector<Poly> center_images;
};

/// Throws ZeroGenerator when f_i = 0 and NameCollision when a new variable
/// name is already taken.
BlowUpChart rees_chart(const Ring& A, const Ideal& I, std::size_t i, std::size_t depth = 1);

/// (M ⊗ A_i) modulo its exceptional torsion.
PresentedModule strict_transform_module(const PresentedModule& M, const BlowUpChart& chart);
/// Same, keeping the exponent at which the saturation stabilized.
Saturation<PresentedModule> strict_transform(const PresentedModule& M, const BlowUpChart& chart);

/// A finitely presented A-algebra: the ring B = A[y_1..y_m]/K, with the
/// variables of A first.
struct Algebra {
  Ring base;
  Ring ring;

  static Algebra make(const Ring& base, std::vector<std::string> extra,
                      std::vector<std::string> relations);
  std::size_t extra_vars() const { return ring.nvars() - base.nvars(); }
};

Algebra strict_transform_algebra(const Algebra& B, const BlowUpChart& chart);

struct BlowUpStage {
  Ideal center;
  std::size_t index = 0;
  unsigned admissibility_exponent = 0;
  BlowUpChart chart;
  /// Supports induced on the chart ring.
  PhiRing supports;
};

struct BlowUpSequence {
  PhiRing root;
  std::vector<BlowUpStage> stages;

  const PhiRing& current() const { return stages.empty() ? root : stages.back().supports; }
  std::vector<Poly> exceptional() const;
};

/// Appends a chart of the blow-up along `center`, which must be admissible
/// for the current supports (InadmissibleCenter otherwise).
BlowUpSequence compose(const BlowUpSequence& seq, const Ideal& center, std::size_t index);

}  // namespace phiflat
