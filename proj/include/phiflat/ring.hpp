#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "phiflat/groebner.hpp"
#include "phiflat/poly.hpp"

namespace phiflat {

/// A = Q[x]/J, carried as the polynomial ring plus generators of J.  Every
/// ideal and module operation in A lifts to Q[x] and adjoins J.
class Ring {
public:
  Ring() = default;
  explicit Ring(RingPtr poly, std::vector<Poly> relations = {}, bool domain = false);

  /// Polynomial ring: always a domain.
  static Ring polynomial(RingPtr poly);

  const RingPtr& poly() const { return poly_; }
  const std::vector<Poly>& relations() const { return relations_; }
  bool is_quotient() const { return !relations_.empty(); }
  /// True when the ring is known to be an integral domain (polynomial rings
  /// and blow-up charts of domains).
  bool known_domain() const { return domain_; }
  std::size_t nvars() const { return poly_->nvars(); }

  /// Reduced basis of J (rank 1); cached.
  const gb::Basis& relation_basis() const;
  /// Canonical representative of `f` modulo J.
  Poly reduce(const Poly& f) const;
  bool is_zero(const Poly& f) const { return reduce(f).is_zero(); }
  /// A = 0.
  bool is_zero_ring() const;

  Poly parse(std::string_view text) const { return parse_poly(poly_, text); }
  Poly zero() const { return Poly(poly_); }
  Poly one() const { return Poly::constant(poly_, 1); }
  Poly var(std::size_t i) const { return Poly::variable(poly_, i); }

  bool operator==(const Ring& o) const;
  bool operator!=(const Ring& o) const { return !(*this == o); }

  std::string str() const;

private:
  struct Cache {
    std::once_flag once;
    gb::Basis basis;
  };
  RingPtr poly_;
  std::vector<Poly> relations_;
  bool domain_ = false;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

void require_same_ring(const Ring& a, const Ring& b, const char* where);

/// Finitely generated ideal of a Ring with a lazily cached reduced Gröbner
/// basis (of the lift I + J).
class Ideal {
public:
  Ideal() = default;
  Ideal(Ring ring, std::vector<Poly> gens);

  static Ideal unit(const Ring& ring) { return Ideal(ring, {ring.one()}); }
  static Ideal zero(const Ring& ring) { return Ideal(ring, {}); }

  const Ring& ring() const { return ring_; }
  const std::vector<Poly>& gens() const { return gens_; }

  const gb::Basis& basis() const;
  /// Reduced generators of I (the Gröbner basis of I + J with elements of J
  /// dropped), sorted ascending by leading term.
  std::vector<Poly> reduced_gens() const;

  bool contains(const Poly& f) const;
  bool contains(const Ideal& other) const;
  bool is_unit() const;
  bool is_zero() const;
  Poly normal_form(const Poly& f) const;

  Ideal operator+(const Ideal& o) const;
  Ideal operator*(const Ideal& o) const;
  Ideal pow(unsigned n) const;

  bool operator==(const Ideal& o) const;
  bool operator!=(const Ideal& o) const { return !(*this == o); }

  std::string str() const;

private:
  struct Cache {
    std::once_flag once;
    gb::Basis basis;
  };
  Ring ring_;
  std::vector<Poly> gens_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Submodule of A^rank given by generating columns.
struct FreeSubmodule {
  Ring ring;
  std::size_t rank = 0;
  std::vector<Vec> columns;

  /// Reduced basis of the lift (columns + J A^rank) in position-over-term
  /// order.
  gb::Basis basis() const;
  bool contains(const Vec& v) const;
  bool contains(const FreeSubmodule& o) const;
  bool operator==(const FreeSubmodule& o) const;
  /// Canonical generators: reduced basis elements not already in J A^rank.
  std::vector<Vec> reduced_columns() const;
  bool is_whole() const;
};

/// Polynomial matrix given by its columns, each of length `rows`.
struct Matrix {
  std::size_t rows = 0;
  std::vector<Vec> columns;
  std::size_t cols() const { return columns.size(); }
};

// ---------------------------------------------------------------------------
// Operations (all over quotient rings by lifting)

/// Reduced Gröbner basis of I under `order` (the ring's order if omitted).
std::vector<Poly> groebner_basis(const Ideal& ideal,
                                 std::optional<MonomialOrder> order = std::nullopt);
/// Reduced Gröbner basis of a submodule (position-over-term).
std::vector<Vec> groebner_basis(const FreeSubmodule& sub);

/// Normal form of f modulo the basis of I (+ J).  Zero iff f ∈ I.
Poly normal_form(const Poly& f, const Ideal& ideal);

/// {a ∈ A^n : Σ a_j col_j ∈ target} for a map A^n → A^m and a submodule
/// target ⊆ A^m.  Returns reduced generators.
std::vector<Vec> kernel_mod(const Ring& ring, const Matrix& map,
                            const std::vector<Vec>& target);

/// Kernel of a matrix between free modules.
FreeSubmodule module_kernel(const Ring& ring, const Matrix& map);
/// Relation module of the given columns.
FreeSubmodule syzygies(const FreeSubmodule& columns);

/// Coefficients a with v = Σ a_j gens_j (mod J), if v lies in the span.
std::optional<std::vector<Poly>> lift_coefficients(const Ring& ring, const Vec& v,
                                                   const std::vector<Vec>& gens,
                                                   std::size_t rank);

Ideal colon(const Ideal& I, const Ideal& J);
FreeSubmodule colon(const FreeSubmodule& N, const Ideal& J);

FreeSubmodule intersect(const FreeSubmodule& a, const FreeSubmodule& b);
Ideal intersect(const Ideal& a, const Ideal& b);

template <class T>
struct Saturation {
  T result;
  /// Smallest N with (target : J^N) = (target : J^{N+1}).
  unsigned exponent = 0;
};

Saturation<Ideal> saturate(const Ideal& I, const Ideal& J, unsigned max_steps = 1000);
Saturation<FreeSubmodule> saturate(const FreeSubmodule& N, const Ideal& J,
                                   unsigned max_steps = 1000);

/// f^N ∈ I for some N, decided as (I : f^∞) = (1).
bool radical_member(const Poly& f, const Ideal& I);

Ideal ideal_of(const Ring& ring, std::initializer_list<const char*> gens);

}  // namespace phiflat
