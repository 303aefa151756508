#pragma once

#include <optional>
#include <vector>

#include "phiflat/ring.hpp"

namespace phiflat {

/// Ring homomorphism Q[x]/J → Q[y]/K given by the images of the x's.
struct RingMap {
  Ring source;
  Ring target;
  std::vector<Poly> images;

  static RingMap identity(const Ring& ring);

  Poly apply(const Poly& f) const;
  Vec apply(const Vec& v) const;
  Ideal apply(const Ideal& I) const;
  /// Every relation of the source maps to zero in the target.
  bool well_defined() const;
};

/// A ring with a family of constructible supports generated by a finite list
/// of ideals.  An ideal is admissible iff it contains a power of the product
/// P of the generating family.
class PhiRing {
public:
  PhiRing() = default;

  const Ring& base() const { return base_; }
  const std::vector<Ideal>& phi0() const { return phi0_; }
  const Ideal& product() const { return product_; }
  bool degenerate_ok() const { return degenerate_ok_; }
  /// P = 0 in the base (only possible with degenerate_ok).
  bool zero_support() const { return zero_support_; }

  friend PhiRing make_phi_ring(Ring base, std::vector<Ideal> phi0, bool degenerate_ok);

private:
  Ring base_;
  std::vector<Ideal> phi0_;
  Ideal product_;
  bool degenerate_ok_ = false;
  bool zero_support_ = false;
};

/// Validates and caches the support product.  Throws EmptyFamily when phi0
/// is empty and ZeroSupport when P = 0 without `degenerate_ok`.
PhiRing make_phi_ring(Ring base, std::vector<Ideal> phi0, bool degenerate_ok = false);

inline constexpr unsigned kMaxAdmissibleExponent = 64;

struct Admissibility {
  bool admissible = false;
  /// First N with P^N ⊆ I found by incremental search; empty when not
  /// admissible or when the search hit the cap (exponent_unknown).
  std::optional<unsigned> exponent;
  bool exponent_unknown = false;
  /// When not admissible: a generator of P outside √I.
  std::optional<Poly> witness;
};

Admissibility is_admissible(const PhiRing& A, const Ideal& I,
                            unsigned max_exponent = kMaxAdmissibleExponent);

/// P^N ⊆ I checked by normal forms of the generators of P^N.
bool power_contained(const Ideal& P, unsigned N, const Ideal& I);

struct PhiMorphism {
  PhiRing source;
  PhiRing target;
  std::vector<Poly> images;

  RingMap ring_map() const { return {source.base(), target.base(), images}; }
};

/// f(P0)·target admissible for every member P0 of the source family.  Throws
/// MalformedMorphism when the images do not define a ring map.
bool is_phi_morphism(const PhiMorphism& f);

/// Target ring with the family generated by the images of the source family.
PhiRing induced_supports(const RingMap& f, const PhiRing& A, bool degenerate_ok = false);

}  // namespace phiflat
