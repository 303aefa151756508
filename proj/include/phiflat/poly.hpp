#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phiflat/monomial.hpp"

namespace phiflat {

using Rational = mpq_class;

std::string rational_string(const Rational& q);

/// Q[x_1..x_n] with a fixed monomial order.  Shared immutably by all of its
/// polynomials.
class PolyRing {
public:
  PolyRing(std::vector<std::string> vars, MonomialOrder order = MonomialOrder::grevlex());

  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::string& var(std::size_t i) const { return vars_[i]; }
  const MonomialOrder& order() const { return order_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const PolyRing& other) const {
    return vars_ == other.vars_ && order_ == other.order_;
  }

  std::string str() const;

private:
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_poly_ring(std::vector<std::string> vars,
                       MonomialOrder order = MonomialOrder::grevlex());

/// Structural equality; throws RingMismatch otherwise.
void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where);
bool same_ring(const RingPtr& a, const RingPtr& b);

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Sparse polynomial with terms sorted descending in the ring's order and no
/// zero coefficients.
class Poly {
public:
  Poly() = default;
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
  /// Builds from arbitrary terms: sorts, merges duplicates, drops zeros.
  Poly(RingPtr ring, std::vector<Term> terms);

  static Poly constant(RingPtr ring, const Rational& c);
  static Poly variable(RingPtr ring, std::size_t index);
  static Poly term(RingPtr ring, Monomial m, const Rational& c);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  const Term& leading() const { return terms_.front(); }
  int32_t total_degree() const;
  bool involves(std::size_t var) const;
  bool is_monomial() const { return terms_.size() == 1; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const Rational& c) const;
  Poly times_term(const Monomial& m, const Rational& c) const;
  Poly pow(unsigned n) const;
  Poly monic() const;

  /// Ring homomorphism sending variable i to images[i] (all in `target`).
  Poly substitute(const std::vector<Poly>& images, const RingPtr& target) const;
  /// Same polynomial re-sorted in `target`, which must have the same variables
  /// as a prefix (extra trailing variables allowed).
  Poly in_ring(const RingPtr& target) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::string str() const;

private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Column vector in a free module of finite rank.
using Vec = std::vector<Poly>;

Vec zero_vec(const RingPtr& ring, std::size_t rank);
Vec unit_vec(const RingPtr& ring, std::size_t rank, std::size_t index);
bool is_zero_vec(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec scale_vec(const Poly& c, const Vec& v);

/// Parses infix polynomial syntax (`3/4*u^2*v - v + 1`, parentheses allowed).
/// Unknown identifiers raise ParseError with the byte offset.
Poly parse_poly(const RingPtr& ring, std::string_view text);

}  // namespace phiflat
