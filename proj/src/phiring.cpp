#include "phiflat/phiring.hpp"

#include <algorithm>

#include "phiflat/error.hpp"

namespace phiflat {

RingMap RingMap::identity(const Ring& ring) {
  std::vector<Poly> imgs;
  for (std::size_t i = 0; i < ring.nvars(); ++i) imgs.push_back(ring.var(i));
  return {ring, ring, std::move(imgs)};
}

Poly RingMap::apply(const Poly& f) const {
  require_same_ring(source.poly(), f.ring(), "ring map");
  return target.reduce(f.substitute(images, target.poly()));
}

Vec RingMap::apply(const Vec& v) const {
  Vec out;
  out.reserve(v.size());
  for (const auto& p : v) out.push_back(apply(p));
  return out;
}

Ideal RingMap::apply(const Ideal& I) const {
  std::vector<Poly> gens;
  for (const auto& g : I.gens()) gens.push_back(apply(g));
  return Ideal(target, std::move(gens));
}

bool RingMap::well_defined() const {
  if (images.size() != source.nvars()) return false;
  for (const auto& img : images)
    if (!same_ring(img.ring(), target.poly())) return false;
  return std::all_of(source.relations().begin(), source.relations().end(),
                     [&](const Poly& r) { return apply(r).is_zero(); });
}

PhiRing make_phi_ring(Ring base, std::vector<Ideal> phi0, bool degenerate_ok) {
  if (phi0.empty()) throw Error(ErrorCode::EmptyFamily, "support family is empty");
  for (const auto& I : phi0) require_same_ring(base, I.ring(), "support family");
  PhiRing A;
  A.base_ = std::move(base);
  A.phi0_ = std::move(phi0);
  Ideal prod = A.phi0_.front();
  for (std::size_t i = 1; i < A.phi0_.size(); ++i) prod = prod * A.phi0_[i];
  // Keep generator order; drop zeros and repeats.
  std::vector<Poly> gens;
  for (const auto& g : prod.gens()) {
    Poly r = A.base_.reduce(g);
    if (r.is_zero()) continue;
    if (std::find(gens.begin(), gens.end(), r) == gens.end()) gens.push_back(std::move(r));
  }
  A.product_ = Ideal(A.base_, std::move(gens));
  A.degenerate_ok_ = degenerate_ok;
  A.zero_support_ = A.product_.gens().empty();
  if (A.zero_support_ && !degenerate_ok)
    throw Error(ErrorCode::ZeroSupport,
                "product of the support family is zero in " + A.base_.str());
  return A;
}

bool power_contained(const Ideal& P, unsigned N, const Ideal& I) {
  Ideal pn = P.pow(N);
  return std::all_of(pn.gens().begin(), pn.gens().end(),
                     [&](const Poly& g) { return I.contains(g); });
}

Admissibility is_admissible(const PhiRing& A, const Ideal& I, unsigned max_exponent) {
  require_same_ring(A.base(), I.ring(), "is_admissible");
  Admissibility out;
  if (A.zero_support()) {
    out.admissible = true;
    out.exponent = 1;
    return out;
  }
  for (const auto& p : A.product().gens()) {
    if (!radical_member(p, I)) {
      out.witness = p;
      return out;
    }
  }
  out.admissible = true;
  const Ideal& P = A.product();
  Ideal power = Ideal::unit(A.base());
  for (unsigned n = 1; n <= max_exponent; ++n) {
    power = Ideal(A.base(), (power * P).reduced_gens());
    if (std::all_of(power.gens().begin(), power.gens().end(),
                    [&](const Poly& g) { return I.contains(g); })) {
      out.exponent = n;
      return out;
    }
  }
  out.exponent_unknown = true;
  return out;
}

bool is_phi_morphism(const PhiMorphism& f) {
  RingMap m = f.ring_map();
  if (!m.well_defined())
    throw Error(ErrorCode::MalformedMorphism, "images do not define a ring homomorphism");
  for (const auto& P0 : f.source.phi0())
    if (!is_admissible(f.target, m.apply(P0)).admissible) return false;
  return true;
}

PhiRing induced_supports(const RingMap& f, const PhiRing& A, bool degenerate_ok) {
  require_same_ring(f.source, A.base(), "induced_supports");
  std::vector<Ideal> phi;
  for (const auto& P0 : A.phi0()) phi.push_back(f.apply(P0));
  return make_phi_ring(f.target, std::move(phi), degenerate_ok);
}

}  // namespace phiflat
