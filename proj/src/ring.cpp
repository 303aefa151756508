#include "phiflat/ring.hpp"

#include <algorithm>

#include "phiflat/error.hpp"

namespace phiflat {

namespace {

gb::SVec scalar_svec(const Poly& p, uint32_t comp) {
  gb::SVec out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({t.mono, comp, t.coeff});
  return out;
}

/// Lift of a submodule of A^rank: its columns plus J e_i.
std::vector<gb::SVec> lifted(const Ring& ring, std::size_t rank, const std::vector<Vec>& cols) {
  std::vector<gb::SVec> gens;
  gens.reserve(cols.size() + rank * ring.relations().size());
  for (const auto& c : cols) gens.push_back(gb::to_svec(c));
  for (const auto& p : ring.relation_basis().elems) {
    for (std::size_t i = 0; i < rank; ++i) {
      gb::SVec s = p;
      for (auto& t : s) t.comp = static_cast<uint32_t>(i);
      gens.push_back(std::move(s));
    }
  }
  return gens;
}

Vec reduce_vec(const Ring& ring, Vec v) {
  for (auto& p : v) p = ring.reduce(p);
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ring

Ring::Ring(RingPtr poly, std::vector<Poly> relations, bool domain)
    : poly_(std::move(poly)), domain_(domain) {
  for (auto& r : relations) {
    require_same_ring(poly_, r.ring(), "ring relations");
    if (!r.is_zero()) relations_.push_back(std::move(r));
  }
  if (relations_.empty()) domain_ = true;
}

Ring Ring::polynomial(RingPtr poly) { return Ring(std::move(poly), {}, true); }

const gb::Basis& Ring::relation_basis() const {
  std::call_once(cache_->once, [&] {
    std::vector<gb::SVec> gens;
    for (const auto& r : relations_) gens.push_back(scalar_svec(r, 0));
    cache_->basis = gb::groebner(std::move(gens), poly_->nvars(), 1, poly_->order());
  });
  return cache_->basis;
}

Poly Ring::reduce(const Poly& f) const {
  require_same_ring(poly_, f.ring(), "ring reduce");
  if (relations_.empty()) return f;
  gb::SVec nf = gb::normal_form(scalar_svec(f, 0), relation_basis());
  return gb::to_vec(nf, poly_, 1)[0];
}

bool Ring::is_zero_ring() const { return relation_basis().is_whole() && !relations_.empty(); }

bool Ring::operator==(const Ring& o) const {
  if (!same_ring(poly_, o.poly_)) return false;
  return gb::same_basis(relation_basis(), o.relation_basis());
}

std::string Ring::str() const {
  std::string s = poly_->str();
  if (!relations_.empty()) {
    s += "/(";
    const auto& elems = relation_basis().elems;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (i) s += ", ";
      s += gb::to_vec(elems[i], poly_, 1)[0].str();
    }
    s += ")";
  }
  return s;
}

void require_same_ring(const Ring& a, const Ring& b, const char* where) {
  if (!same_ring(a.poly(), b.poly()) ||
      !gb::same_basis(a.relation_basis(), b.relation_basis()))
    throw Error(ErrorCode::RingMismatch,
                std::string(where) + ": operands live in different rings");
}

// ---------------------------------------------------------------------------
// Ideal

Ideal::Ideal(Ring ring, std::vector<Poly> gens) : ring_(std::move(ring)) {
  for (auto& g : gens) {
    require_same_ring(ring_.poly(), g.ring(), "ideal generators");
    gens_.push_back(std::move(g));
  }
}

const gb::Basis& Ideal::basis() const {
  std::call_once(cache_->once, [&] {
    std::vector<gb::SVec> gens;
    for (const auto& g : gens_) gens.push_back(scalar_svec(g, 0));
    for (const auto& r : ring_.relation_basis().elems) gens.push_back(r);
    cache_->basis = gb::groebner(std::move(gens), ring_.nvars(), 1, ring_.poly()->order());
  });
  return cache_->basis;
}

std::vector<Poly> Ideal::reduced_gens() const {
  std::vector<Poly> out;
  for (const auto& e : basis().elems) {
    Poly p = gb::to_vec(e, ring_.poly(), 1)[0];
    if (ring_.is_quotient() && ring_.is_zero(p)) continue;
    out.push_back(std::move(p));
  }
  return out;
}

Poly Ideal::normal_form(const Poly& f) const {
  require_same_ring(ring_.poly(), f.ring(), "normal_form");
  gb::SVec nf = gb::normal_form(scalar_svec(f, 0), basis());
  return gb::to_vec(nf, ring_.poly(), 1)[0];
}

bool Ideal::contains(const Poly& f) const { return normal_form(f).is_zero(); }

bool Ideal::contains(const Ideal& other) const {
  require_same_ring(ring_, other.ring_, "ideal containment");
  return std::all_of(other.gens_.begin(), other.gens_.end(),
                     [&](const Poly& g) { return contains(g); });
}

bool Ideal::is_unit() const { return basis().is_whole(); }

bool Ideal::is_zero() const {
  return std::all_of(gens_.begin(), gens_.end(), [&](const Poly& g) { return ring_.is_zero(g); });
}

Ideal Ideal::operator+(const Ideal& o) const {
  require_same_ring(ring_, o.ring_, "ideal sum");
  std::vector<Poly> g = gens_;
  g.insert(g.end(), o.gens_.begin(), o.gens_.end());
  return Ideal(ring_, std::move(g));
}

Ideal Ideal::operator*(const Ideal& o) const {
  require_same_ring(ring_, o.ring_, "ideal product");
  std::vector<Poly> g;
  for (const auto& a : gens_)
    for (const auto& b : o.gens_) {
      Poly p = ring_.reduce(a * b);
      if (p.is_zero()) continue;
      if (std::find(g.begin(), g.end(), p) == g.end()) g.push_back(std::move(p));
    }
  return Ideal(ring_, std::move(g));
}

Ideal Ideal::pow(unsigned n) const {
  Ideal acc = Ideal::unit(ring_);
  for (unsigned k = 0; k < n; ++k) acc = Ideal(ring_, (acc * *this).reduced_gens());
  return acc;
}

bool Ideal::operator==(const Ideal& o) const {
  if (!same_ring(ring_.poly(), o.ring_.poly())) return false;
  return gb::same_basis(basis(), o.basis());
}

std::string Ideal::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) s += ", ";
    s += gens_[i].str();
  }
  return s + ")";
}

Ideal ideal_of(const Ring& ring, std::initializer_list<const char*> gens) {
  std::vector<Poly> ps;
  for (const char* g : gens) ps.push_back(ring.parse(g));
  return Ideal(ring, std::move(ps));
}

// ---------------------------------------------------------------------------
// FreeSubmodule

gb::Basis FreeSubmodule::basis() const {
  for (const auto& c : columns)
    if (c.size() != rank) throw Error(ErrorCode::InvalidArgument, "column length != rank");
  return gb::groebner(lifted(ring, rank, columns), ring.nvars(), rank, ring.poly()->order());
}

bool FreeSubmodule::contains(const Vec& v) const {
  return gb::reduces_to_zero(gb::to_svec(v), basis());
}

bool FreeSubmodule::contains(const FreeSubmodule& o) const {
  gb::Basis b = basis();
  return std::all_of(o.columns.begin(), o.columns.end(),
                     [&](const Vec& v) { return gb::reduces_to_zero(gb::to_svec(v), b); });
}

bool FreeSubmodule::operator==(const FreeSubmodule& o) const {
  if (rank != o.rank) return false;
  return gb::same_basis(basis(), o.basis());
}

std::vector<Vec> FreeSubmodule::reduced_columns() const {
  gb::Basis b = basis();
  std::vector<Vec> out;
  for (const auto& e : b.elems) {
    Vec v = gb::to_vec(e, ring.poly(), rank);
    if (ring.is_quotient() && is_zero_vec(reduce_vec(ring, v))) continue;
    out.push_back(std::move(v));
  }
  return out;
}

bool FreeSubmodule::is_whole() const { return basis().is_whole(); }

// ---------------------------------------------------------------------------
// Operations

std::vector<Poly> groebner_basis(const Ideal& ideal, std::optional<MonomialOrder> order) {
  if (!order || *order == ideal.ring().poly()->order()) return ideal.reduced_gens();
  RingPtr other = make_poly_ring(ideal.ring().poly()->vars(), *order);
  std::vector<Poly> rel;
  for (const auto& r : ideal.ring().relations()) rel.push_back(r.in_ring(other));
  std::vector<Poly> gens;
  for (const auto& g : ideal.gens()) gens.push_back(g.in_ring(other));
  Ideal moved(Ring(other, rel, ideal.ring().known_domain()), gens);
  return moved.reduced_gens();
}

std::vector<Vec> groebner_basis(const FreeSubmodule& sub) { return sub.reduced_columns(); }

Poly normal_form(const Poly& f, const Ideal& ideal) { return ideal.normal_form(f); }

std::vector<Vec> kernel_mod(const Ring& ring, const Matrix& map, const std::vector<Vec>& target) {
  const std::size_t m = map.rows;
  const std::size_t n = map.cols();
  if (n == 0) return {};
  std::vector<gb::SVec> gens;
  gens.reserve(n + target.size() + m * ring.relations().size());
  for (std::size_t j = 0; j < n; ++j) {
    if (map.columns[j].size() != m)
      throw Error(ErrorCode::InvalidArgument, "matrix column has wrong length");
    gb::SVec s = gb::to_svec(map.columns[j]);
    s.push_back({Monomial(ring.nvars()), static_cast<uint32_t>(m + j), Rational(1)});
    gens.push_back(std::move(s));
  }
  for (const auto& t : target) {
    if (t.size() != m) throw Error(ErrorCode::InvalidArgument, "target vector has wrong length");
    gens.push_back(gb::to_svec(t));
  }
  for (const auto& p : ring.relation_basis().elems) {
    for (std::size_t i = 0; i < m; ++i) {
      gb::SVec s = p;
      for (auto& t : s) t.comp = static_cast<uint32_t>(i);
      gens.push_back(std::move(s));
    }
  }
  gb::Basis b = gb::groebner(std::move(gens), ring.nvars(), m + n, ring.poly()->order());
  std::vector<Vec> kernel;
  for (const auto& e : b.elems) {
    if (e.front().comp < m) continue;
    Vec v = gb::to_vec(e, ring.poly(), m + n);
    Vec tag = reduce_vec(ring, Vec(v.begin() + static_cast<long>(m), v.end()));
    if (!is_zero_vec(tag)) kernel.push_back(std::move(tag));
  }
  FreeSubmodule k{ring, n, std::move(kernel)};
  return k.reduced_columns();
}

FreeSubmodule module_kernel(const Ring& ring, const Matrix& map) {
  return FreeSubmodule{ring, map.cols(), kernel_mod(ring, map, {})};
}

FreeSubmodule syzygies(const FreeSubmodule& columns) {
  return module_kernel(columns.ring, Matrix{columns.rank, columns.columns});
}

std::optional<std::vector<Poly>> lift_coefficients(const Ring& ring, const Vec& v,
                                                   const std::vector<Vec>& gens,
                                                   std::size_t rank) {
  const std::size_t n = gens.size();
  std::vector<gb::SVec> lg;
  for (std::size_t j = 0; j < n; ++j) {
    gb::SVec s = gb::to_svec(gens[j]);
    s.push_back({Monomial(ring.nvars()), static_cast<uint32_t>(rank + j), Rational(1)});
    lg.push_back(std::move(s));
  }
  for (const auto& p : ring.relation_basis().elems) {
    for (std::size_t i = 0; i < rank; ++i) {
      gb::SVec s = p;
      for (auto& t : s) t.comp = static_cast<uint32_t>(i);
      lg.push_back(std::move(s));
    }
  }
  gb::Basis b = gb::groebner(std::move(lg), ring.nvars(), rank + n, ring.poly()->order());
  gb::SVec nf = gb::normal_form(gb::to_svec(v), b);
  for (const auto& t : nf)
    if (t.comp < rank) return std::nullopt;
  Vec full = gb::to_vec(nf, ring.poly(), rank + n);
  std::vector<Poly> coeffs;
  for (std::size_t j = 0; j < n; ++j) coeffs.push_back(ring.reduce(-full[rank + j]));
  return coeffs;
}

FreeSubmodule colon(const FreeSubmodule& N, const Ideal& J) {
  require_same_ring(N.ring, J.ring(), "colon");
  std::vector<Poly> g;
  for (const auto& p : J.gens()) {
    Poly r = N.ring.reduce(p);
    if (!r.is_zero()) g.push_back(std::move(r));
  }
  const std::size_t r = N.rank;
  const RingPtr& P = N.ring.poly();
  if (g.empty()) {
    std::vector<Vec> all;
    for (std::size_t i = 0; i < r; ++i) all.push_back(unit_vec(P, r, i));
    return FreeSubmodule{N.ring, r, std::move(all)};
  }
  const std::size_t m = g.size();
  Matrix map{r * m, {}};
  for (std::size_t i = 0; i < r; ++i) {
    Vec col = zero_vec(P, r * m);
    for (std::size_t k = 0; k < m; ++k) col[k * r + i] = g[k];
    map.columns.push_back(std::move(col));
  }
  std::vector<Vec> target;
  for (std::size_t k = 0; k < m; ++k) {
    for (const auto& c : N.columns) {
      Vec t = zero_vec(P, r * m);
      for (std::size_t i = 0; i < r; ++i) t[k * r + i] = c[i];
      target.push_back(std::move(t));
    }
  }
  return FreeSubmodule{N.ring, r, kernel_mod(N.ring, map, target)};
}

Ideal colon(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring(), "colon");
  FreeSubmodule n{I.ring(), 1, {}};
  for (const auto& g : I.gens()) n.columns.push_back({g});
  FreeSubmodule c = colon(n, J);
  std::vector<Poly> gens;
  for (auto& v : c.columns) gens.push_back(std::move(v[0]));
  return Ideal(I.ring(), std::move(gens));
}

FreeSubmodule intersect(const FreeSubmodule& a, const FreeSubmodule& b) {
  require_same_ring(a.ring, b.ring, "intersect");
  if (a.rank != b.rank) throw Error(ErrorCode::InvalidArgument, "intersect: rank mismatch");
  std::vector<Vec> coeffs = kernel_mod(a.ring, Matrix{a.rank, a.columns}, b.columns);
  std::vector<Vec> image;
  const RingPtr& P = a.ring.poly();
  for (const auto& c : coeffs) {
    Vec v = zero_vec(P, a.rank);
    for (std::size_t j = 0; j < c.size(); ++j) v = v + scale_vec(c[j], a.columns[j]);
    v = reduce_vec(a.ring, v);
    if (!is_zero_vec(v)) image.push_back(std::move(v));
  }
  FreeSubmodule out{a.ring, a.rank, std::move(image)};
  out.columns = out.reduced_columns();
  return out;
}

Ideal intersect(const Ideal& a, const Ideal& b) {
  FreeSubmodule x{a.ring(), 1, {}}, y{b.ring(), 1, {}};
  for (const auto& g : a.gens()) x.columns.push_back({g});
  for (const auto& g : b.gens()) y.columns.push_back({g});
  FreeSubmodule z = intersect(x, y);
  std::vector<Poly> gens;
  for (auto& v : z.columns) gens.push_back(std::move(v[0]));
  return Ideal(a.ring(), std::move(gens));
}

Saturation<FreeSubmodule> saturate(const FreeSubmodule& N, const Ideal& J, unsigned max_steps) {
  FreeSubmodule cur{N.ring, N.rank, N.reduced_columns()};
  for (unsigned step = 0; step <= max_steps; ++step) {
    FreeSubmodule next = colon(cur, J);
    if (next == cur) return {std::move(cur), step};
    cur = std::move(next);
  }
  throw Error(ErrorCode::NotStabilized,
              "saturation did not stabilize within " + std::to_string(max_steps) + " steps");
}

Saturation<Ideal> saturate(const Ideal& I, const Ideal& J, unsigned max_steps) {
  FreeSubmodule n{I.ring(), 1, {}};
  for (const auto& g : I.gens()) n.columns.push_back({g});
  auto s = saturate(n, J, max_steps);
  std::vector<Poly> gens;
  for (auto& v : s.result.columns) gens.push_back(std::move(v[0]));
  return {Ideal(I.ring(), std::move(gens)), s.exponent};
}

bool radical_member(const Poly& f, const Ideal& I) {
  require_same_ring(I.ring().poly(), f.ring(), "radical_member");
  return saturate(I, Ideal(I.ring(), {f})).result.is_unit();
}

}  // namespace phiflat
