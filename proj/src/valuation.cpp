#include "phiflat/valuation.hpp"

#include <algorithm>

#include "phiflat/error.hpp"

namespace phiflat {

bool Value::is_zero() const {
  return !infinite && std::all_of(w.begin(), w.end(), [](int64_t x) { return x == 0; });
}

bool Value::positive() const {
  if (infinite) return true;
  for (auto x : w)
    if (x != 0) return x > 0;
  return false;
}

Value Value::slice(std::size_t from, std::size_t to) const {
  if (infinite) return inf();
  return {false, std::vector<int64_t>(w.begin() + from, w.begin() + to)};
}

Value Value::operator+(const Value& o) const {
  if (infinite || o.infinite) return inf();
  Value out = *this;
  for (std::size_t i = 0; i < w.size(); ++i) out.w[i] += o.w[i];
  return out;
}

Value Value::operator-(const Value& o) const {
  if (o.infinite) throw Error(ErrorCode::InfiniteValue, "subtracting an infinite value");
  if (infinite) return inf();
  Value out = *this;
  for (std::size_t i = 0; i < w.size(); ++i) out.w[i] -= o.w[i];
  return out;
}

std::strong_ordering Value::operator<=>(const Value& o) const {
  if (infinite || o.infinite) return infinite <=> o.infinite;
  return w <=> o.w;
}

std::string Value::str() const {
  if (infinite) return "inf";
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

ValuationData::ValuationData(std::vector<std::vector<int64_t>> weights, std::vector<bool> infinite)
    : k_(weights.size()), w_(std::move(weights)), inf_(std::move(infinite)) {
  if (k_ == 0) throw Error(ErrorCode::InvalidArgument, "valuation needs at least one row");
  n_ = w_.front().size();
  for (const auto& row : w_)
    if (row.size() != n_) throw Error(ErrorCode::InvalidArgument, "ragged weight matrix");
  if (inf_.empty()) inf_.assign(n_, false);
  if (inf_.size() != n_) throw Error(ErrorCode::InvalidArgument, "infinite flags size mismatch");
}

ValuationData ValuationData::trivial(std::size_t nvars, std::vector<bool> infinite) {
  ValuationData v;
  v.n_ = nvars;
  v.inf_ = infinite.empty() ? std::vector<bool>(nvars, false) : std::move(infinite);
  return v;
}

Value ValuationData::of_variable(std::size_t var) const {
  if (inf_[var]) return Value::inf();
  Value out = Value::zero(k_);
  for (std::size_t r = 0; r < k_; ++r) out.w[r] = w_[r][var];
  return out;
}

Value ValuationData::of_monomial(const Monomial& m) const {
  Value out = Value::zero(k_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (m[i] == 0) continue;
    if (inf_[i]) return Value::inf();
    for (std::size_t r = 0; r < k_; ++r) out.w[r] += w_[r][i] * m[i];
  }
  return out;
}

Value ValuationData::value(const Poly& f) const {
  if (f.ring()->nvars() != n_)
    throw Error(ErrorCode::RingMismatch, "valuation on " + std::to_string(n_) +
                                             " variables applied in " + f.ring()->str());
  Value best = Value::inf();
  for (const auto& t : f.terms()) best = std::min(best, of_monomial(t.mono));
  return best;
}

Value ValuationData::value(const std::vector<Poly>& fs) const {
  Value best = Value::inf();
  for (const auto& f : fs) best = std::min(best, value(f));
  return best;
}

bool ValuationData::injective() const {
  // rank of W restricted to finite columns, over Q
  std::vector<std::vector<Rational>> a;
  std::size_t cols = 0;
  for (std::size_t r = 0; r < k_; ++r) {
    std::vector<Rational> row;
    for (std::size_t i = 0; i < n_; ++i)
      if (!inf_[i]) row.emplace_back(static_cast<long>(w_[r][i]));
    cols = row.size();
    a.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank == cols;
}

bool ValuationData::nonnegative() const {
  for (std::size_t i = 0; i < n_; ++i)
    if (!of_variable(i).nonnegative()) return false;
  return true;
}

ValuationData ValuationData::rows(std::size_t from, std::size_t to,
                                  const std::vector<bool>& also_infinite) const {
  std::vector<bool> inf = inf_;
  for (std::size_t i = 0; i < n_ && i < also_infinite.size(); ++i)
    if (also_infinite[i]) inf[i] = true;
  if (from >= to) return trivial(n_, std::move(inf));
  std::vector<std::vector<int64_t>> w(w_.begin() + from, w_.begin() + to);
  return ValuationData(std::move(w), std::move(inf));
}

std::string ValuationData::str() const {
  std::string s = "[";
  for (std::size_t r = 0; r < k_; ++r) {
    if (r) s += ", ";
    s += "[";
    for (std::size_t i = 0; i < n_; ++i) {
      if (i) s += ", ";
      s += inf_[i] ? "inf" : std::to_string(w_[r][i]);
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace phiflat
