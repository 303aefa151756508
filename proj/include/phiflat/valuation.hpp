#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "phiflat/poly.hpp"

namespace phiflat {

/// Element of Z^k ∪ {∞}, ordered lexicographically with ∞ on top.
struct Value {
  bool infinite = false;
  std::vector<int64_t> w;

  static Value inf() { return {true, {}}; }
  static Value zero(std::size_t k) { return {false, std::vector<int64_t>(k, 0)}; }

  std::size_t rank() const { return w.size(); }
  bool is_zero() const;
  /// Lexicographically positive (∞ counts as positive).
  bool positive() const;
  bool nonnegative() const { return is_zero() || positive(); }
  /// Coordinates [from, to) (0-based); ∞ stays ∞.
  Value slice(std::size_t from, std::size_t to) const;

  Value operator+(const Value& o) const;
  /// Requires `o` finite.
  Value operator-(const Value& o) const;
  std::strong_ordering operator<=>(const Value& o) const;
  bool operator==(const Value& o) const { return (*this <=> o) == 0; }

  std::string str() const;
};

/// Monomial valuation on Q[x_1..x_n]: v(x^e) = W·e compared lexicographically,
/// v(f) = the minimum over the monomials of f.  A variable flagged infinite
/// has value ∞ (it maps to zero), so monomials involving it are skipped.
class ValuationData {
public:
  ValuationData() = default;
  /// `weights` is k×n (rows = coordinates).  Throws InvalidArgument on ragged
  /// input.
  ValuationData(std::vector<std::vector<int64_t>> weights, std::vector<bool> infinite = {});
  /// Rank 0: the trivial valuation (0 on nonzero elements).
  static ValuationData trivial(std::size_t nvars, std::vector<bool> infinite = {});

  std::size_t rank() const { return k_; }
  std::size_t nvars() const { return n_; }
  const std::vector<std::vector<int64_t>>& weights() const { return w_; }
  const std::vector<bool>& infinite() const { return inf_; }
  bool is_infinite(std::size_t var) const { return inf_[var]; }

  Value of_variable(std::size_t var) const;
  Value of_monomial(const Monomial& m) const;
  Value value(const Poly& f) const;
  /// Minimum over a list (∞ for the empty list).
  Value value(const std::vector<Poly>& fs) const;

  /// ker W ∩ Z^n = 0 on the finite variables.  Reported, not enforced.
  bool injective() const;
  /// Every variable has value ≥ 0, so Q[x] lies in the valuation ring.
  bool nonnegative() const;

  /// Rows [from, to) with extra variables marked infinite.
  ValuationData rows(std::size_t from, std::size_t to, const std::vector<bool>& also_infinite) const;

  bool operator==(const ValuationData& o) const = default;
  /// "[[1, 0], [0, inf]]": rows of the weight matrix, `inf` in every row of an
  /// infinite column.
  std::string str() const;

private:
  std::size_t k_ = 0;
  std::size_t n_ = 0;
  std::vector<std::vector<int64_t>> w_;
  std::vector<bool> inf_;
};

}  // namespace phiflat
