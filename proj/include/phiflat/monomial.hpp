#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace phiflat {

/// Exponent vector with cached total degree.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<int32_t> exps);

  static Monomial variable(std::size_t nvars, std::size_t index, int32_t power = 1);

  std::size_t size() const { return exps_.size(); }
  int32_t operator[](std::size_t i) const { return exps_[i]; }
  int32_t degree() const { return degree_; }
  const std::vector<int32_t>& exponents() const { return exps_; }
  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  /// Exact quotient; requires `other.divides(*this)`.
  Monomial operator/(const Monomial& other) const;

  static Monomial lcm(const Monomial& a, const Monomial& b);
  static Monomial gcd(const Monomial& a, const Monomial& b);

  Monomial extended(std::size_t nvars) const;

  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }
  bool operator!=(const Monomial& other) const { return !(*this == other); }

private:
  std::vector<int32_t> exps_;
  int32_t degree_ = 0;
};

enum class OrderKind { Grevlex, Lex, Block };

/// Total multiplicative order on monomials.  `Block(k)` compares the first k
/// variables by grevlex and breaks ties by grevlex on the rest (elimination
/// order for the first block).
struct MonomialOrder {
  OrderKind kind = OrderKind::Grevlex;
  std::size_t block = 0;

  static MonomialOrder grevlex() { return {OrderKind::Grevlex, 0}; }
  static MonomialOrder lex() { return {OrderKind::Lex, 0}; }
  static MonomialOrder elimination(std::size_t k) { return {OrderKind::Block, k}; }

  /// Negative, zero or positive as a <, ==, > b.
  int compare(const Monomial& a, const Monomial& b) const;

  std::string name() const;

  bool operator==(const MonomialOrder& o) const {
    return kind == o.kind && (kind != OrderKind::Block || block == o.block);
  }
  bool operator!=(const MonomialOrder& o) const { return !(*this == o); }
};

}  // namespace phiflat
