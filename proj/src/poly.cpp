#include "phiflat/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

#include "phiflat/error.hpp"
#include "phiflat/parse_util.hpp"

namespace phiflat {

std::string rational_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// ---------------------------------------------------------------------------
// PolyRing

PolyRing::PolyRing(std::vector<std::string> vars, MonomialOrder order)
    : vars_(std::move(vars)), order_(order) {
  std::unordered_set<std::string> seen;
  for (const auto& v : vars_) {
    if (v.empty()) throw Error(ErrorCode::InvalidArgument, "empty variable name");
    if (!seen.insert(v).second)
      throw Error(ErrorCode::NameCollision, "duplicate variable name '" + v + "'");
  }
}

std::optional<std::size_t> PolyRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

std::string PolyRing::str() const {
  std::string s = "QQ[";
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i) s += ",";
    s += vars_[i];
  }
  return s + "]";
}

RingPtr make_poly_ring(std::vector<std::string> vars, MonomialOrder order) {
  return std::make_shared<const PolyRing>(std::move(vars), order);
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where) {
  if (!same_ring(a, b))
    throw Error(ErrorCode::RingMismatch,
                std::string(where) + ": operands live in different rings");
}

// ---------------------------------------------------------------------------
// Poly

namespace {

struct TermGreater {
  const MonomialOrder* order;
  bool operator()(const Term& a, const Term& b) const {
    return order->compare(a.mono, b.mono) > 0;
  }
};

}  // namespace

Poly::Poly(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)) {
  const MonomialOrder& ord = ring_->order();
  std::sort(terms.begin(), terms.end(), TermGreater{&ord});
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().mono == t.mono) {
      terms_.back().coeff += t.coeff;
      if (terms_.back().coeff == 0) terms_.pop_back();
    } else if (t.coeff != 0) {
      terms_.push_back(std::move(t));
    }
  }
}

Poly Poly::constant(RingPtr ring, const Rational& c) {
  Poly p(ring);
  if (c != 0) p.terms_.push_back({Monomial(ring->nvars()), c});
  return p;
}

Poly Poly::variable(RingPtr ring, std::size_t index) {
  Poly p(ring);
  p.terms_.push_back({Monomial::variable(ring->nvars(), index), Rational(1)});
  return p;
}

Poly Poly::term(RingPtr ring, Monomial m, const Rational& c) {
  Poly p(ring);
  if (c != 0) p.terms_.push_back({std::move(m), c});
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1;
}

int32_t Poly::total_degree() const {
  int32_t d = -1;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

bool Poly::involves(std::size_t var) const {
  for (const auto& t : terms_)
    if (t.mono[var] != 0) return true;
  return false;
}

namespace {

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b,
                              const MonomialOrder& ord, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = ord.compare(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(subtract ? Term{b[j].mono, -b[j].coeff} : b[j]);
      ++j;
    } else {
      Rational s = subtract ? Rational(a[i].coeff - b[j].coeff)
                            : Rational(a[i].coeff + b[j].coeff);
      if (s != 0) out.push_back({a[i].mono, s});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j)
    out.push_back(subtract ? Term{b[j].mono, -b[j].coeff} : b[j]);
  return out;
}

}  // namespace

Poly Poly::operator+(const Poly& o) const {
  require_same_ring(ring_, o.ring_, "poly add");
  Poly r(ring_);
  r.terms_ = merge_terms(terms_, o.terms_, ring_->order(), false);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  require_same_ring(ring_, o.ring_, "poly sub");
  Poly r(ring_);
  r.terms_ = merge_terms(terms_, o.terms_, ring_->order(), true);
  return r;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  require_same_ring(ring_, o.ring_, "poly mul");
  if (is_zero() || o.is_zero()) return Poly(ring_);
  // Accumulate row by row; each row is already sorted.
  const Poly& small = size() <= o.size() ? *this : o;
  const Poly& large = size() <= o.size() ? o : *this;
  Poly acc(ring_);
  for (const auto& t : small.terms_) acc = acc + large.times_term(t.mono, t.coeff);
  return acc;
}

Poly Poly::scaled(const Rational& c) const {
  if (c == 0) return Poly(ring_);
  Poly r(*this);
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Poly Poly::times_term(const Monomial& m, const Rational& c) const {
  if (c == 0) return Poly(ring_);
  Poly r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Poly Poly::pow(unsigned n) const {
  Poly result = constant(ring_, 1);
  Poly base = *this;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rational inv = 1 / leading().coeff;
  return scaled(inv);
}

Poly Poly::substitute(const std::vector<Poly>& images, const RingPtr& target) const {
  if (images.size() != ring_->nvars())
    throw Error(ErrorCode::MalformedMorphism, "substitution needs one image per variable");
  Poly acc(target);
  std::vector<std::vector<Poly>> powers(images.size());
  for (const auto& t : terms_) {
    Poly prod = constant(target, t.coeff);
    for (std::size_t i = 0; i < images.size(); ++i) {
      int32_t e = t.mono[i];
      if (!e) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(constant(target, 1));
      while (static_cast<int32_t>(cache.size()) <= e) cache.push_back(cache.back() * images[i]);
      prod = prod * cache[e];
    }
    acc = acc + prod;
  }
  return acc;
}

Poly Poly::in_ring(const RingPtr& target) const {
  if (target->nvars() < ring_->nvars())
    throw Error(ErrorCode::RingMismatch, "target ring has fewer variables");
  for (std::size_t i = 0; i < ring_->nvars(); ++i)
    if (target->var(i) != ring_->var(i))
      throw Error(ErrorCode::RingMismatch, "variable lists do not match");
  std::vector<Term> ts;
  ts.reserve(terms_.size());
  for (const auto& t : terms_) ts.push_back({t.mono.extended(target->nvars()), t.coeff});
  return Poly(target, std::move(ts));
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coeff != o.terms_[i].coeff || terms_[i].mono != o.terms_[i].mono)
      return false;
  }
  return true;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (first) {
      if (c < 0) {
        out += "-";
        c = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (!t.mono[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->var(i);
      if (t.mono[i] > 1) mono += "^" + std::to_string(t.mono[i]);
    }
    if (mono.empty()) {
      out += rational_string(c);
    } else if (c == 1) {
      out += mono;
    } else {
      out += rational_string(c) + "*" + mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Vec helpers

Vec zero_vec(const RingPtr& ring, std::size_t rank) { return Vec(rank, Poly(ring)); }

Vec unit_vec(const RingPtr& ring, std::size_t rank, std::size_t index) {
  Vec v = zero_vec(ring, rank);
  v[index] = Poly::constant(ring, 1);
  return v;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

Vec operator+(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
  return r;
}

Vec scale_vec(const Poly& c, const Vec& v) {
  Vec r;
  r.reserve(v.size());
  for (const auto& p : v) r.push_back(c * p);
  return r;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class PolyParser {
public:
  PolyParser(const RingPtr& ring, Cursor& cur) : ring_(ring), cur_(cur) {}

  Poly expr() {
    Poly acc = term();
    for (;;) {
      cur_.skip_ws();
      char c = cur_.peek();
      if (c == '+') {
        cur_.advance();
        acc = acc + term();
      } else if (c == '-') {
        cur_.advance();
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

private:
  Poly term() {
    Poly acc = unary();
    for (;;) {
      cur_.skip_ws();
      char c = cur_.peek();
      if (c == '*') {
        cur_.advance();
        acc = acc * unary();
      } else if (c == '/') {
        std::size_t at = cur_.pos();
        cur_.advance();
        Poly d = unary();
        if (!d.is_constant() || d.is_zero())
          throw cur_.error_at(at, "division only by nonzero constants");
        acc = acc.scaled(1 / d.leading().coeff);
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    cur_.skip_ws();
    if (cur_.peek() == '-') {
      cur_.advance();
      return -unary();
    }
    if (cur_.peek() == '+') {
      cur_.advance();
      return unary();
    }
    return power();
  }

  Poly power() {
    Poly base = atom();
    cur_.skip_ws();
    if (cur_.peek() == '^') {
      cur_.advance();
      cur_.skip_ws();
      std::size_t at = cur_.pos();
      std::string digits = cur_.take_digits();
      if (digits.empty()) throw cur_.error_at(at, "expected exponent");
      if (digits.size() > 6) throw cur_.error_at(at, "exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  Poly atom() {
    cur_.skip_ws();
    std::size_t at = cur_.pos();
    char c = cur_.peek();
    if (c == '(') {
      cur_.advance();
      Poly inner = expr();
      cur_.expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits = cur_.take_digits();
      return Poly::constant(ring_, Rational(mpz_class(digits)));
    }
    if (is_ident_start(c)) {
      std::string name = cur_.take_ident();
      auto idx = ring_->index_of(name);
      if (!idx) throw cur_.error_at(at, "unknown variable '" + name + "'");
      return Poly::variable(ring_, *idx);
    }
    if (c == '\0') throw cur_.error_at(at, "unexpected end of input");
    throw cur_.error_at(at, std::string("unexpected character '") + c + "'");
  }

  const RingPtr& ring_;
  Cursor& cur_;
};

}  // namespace

Poly parse_poly_at(const RingPtr& ring, Cursor& cur) {
  PolyParser p(ring, cur);
  return p.expr();
}

Poly parse_poly(const RingPtr& ring, std::string_view text) {
  Cursor cur(text);
  Poly p = parse_poly_at(ring, cur);
  cur.skip_ws();
  if (!cur.at_end()) throw cur.error_at(cur.pos(), "trailing input");
  return p;
}

}  // namespace phiflat
