#include "phiflat/depth.hpp"

#include "phiflat/error.hpp"

namespace phiflat {

namespace {

std::vector<Vec> unit_vectors(const RingPtr& P, std::size_t n) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(unit_vec(P, n, i));
  return out;
}

/// v placed in block `b` of A^{g·blocks}.
Vec in_block(const Vec& v, std::size_t b, std::size_t blocks, const RingPtr& P) {
  const std::size_t g = v.size();
  Vec out = zero_vec(P, g * blocks);
  for (std::size_t l = 0; l < g; ++l) out[b * g + l] = v[l];
  return out;
}

std::vector<Vec> block_copies(const std::vector<Vec>& rels, std::size_t blocks,
                              const RingPtr& P) {
  std::vector<Vec> out;
  for (std::size_t b = 0; b < blocks; ++b)
    for (const auto& r : rels) out.push_back(in_block(r, b, blocks, P));
  return out;
}

std::vector<Poly> reduced_generators(const Ideal& I) {
  std::vector<Poly> out;
  for (const auto& g : I.gens()) out.push_back(I.ring().reduce(g));
  return out;
}

Ideal product_of(const std::vector<Ideal>& family) {
  Ideal p = family.front();
  for (std::size_t i = 1; i < family.size(); ++i) p = p * family[i];
  return p;
}

bool is_regular_on(const Poly& f, const FreeSubmodule& S) {
  if (S.ring.is_zero(f)) return false;
  return colon(S, Ideal(S.ring, {f})) == S;
}

/// Generators of I first, then two fixed linear combinations of them.
std::optional<Poly> find_regular(const FreeSubmodule& S, const Ideal& I) {
  std::vector<Poly> gens;
  for (const auto& g : reduced_generators(I))
    if (!g.is_zero()) gens.push_back(g);
  for (const auto& g : gens)
    if (is_regular_on(g, S)) return g;
  if (gens.size() < 2) return std::nullopt;
  Poly sum = gens[0], weighted = gens[0];
  for (std::size_t k = 1; k < gens.size(); ++k) {
    sum = sum + gens[k];
    weighted = weighted + gens[k].scaled(Rational(static_cast<long>(k + 1)));
  }
  for (const auto& c : {sum, weighted})
    if (is_regular_on(c, S)) return c;
  return std::nullopt;
}

}  // namespace

Vec stack(const std::vector<Vec>& blocks) {
  Vec out;
  for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

Torsion torsion_wrt(const PresentedModule& M, const Ideal& I) {
  require_same_ring(M.ring, I.ring(), "torsion");
  FreeSubmodule R = M.relation_module();
  auto sat = saturate(R, I);
  Torsion out{sat.result, {}, {}, sat.exponent};
  for (const auto& c : sat.result.reduced_columns())
    if (!R.contains(c)) out.generators.push_back(c);
  out.purified = PresentedModule{M.ring, M.gens, sat.result.reduced_columns()};
  return out;
}

Torsion torsion_H0(const PresentedModule& M, const PhiRing& A) {
  require_same_ring(M.ring, A.base(), "torsion_H0");
  return torsion_wrt(M, A.product());
}

PresentedModule purify(const PresentedModule& M, const PhiRing& A) {
  return torsion_H0(M, A).purified;
}

FreeSubmodule HomModule::zero_tuples() const {
  return {target.ring, target.gens * r(),
          block_copies(target.relations, r(), target.ring.poly())};
}

FreeSubmodule HomModule::image_tuples() const {
  FreeSubmodule out = zero_tuples();
  const RingPtr& P = target.ring.poly();
  for (std::size_t l = 0; l < target.gens; ++l) {
    std::vector<Vec> blocks;
    for (const auto& f : ideal.gens()) blocks.push_back(scale_vec(f, unit_vec(P, target.gens, l)));
    out.columns.push_back(stack(blocks));
  }
  return out;
}

HomModule hom_from_ideal(const Ideal& I, const PresentedModule& M) {
  require_same_ring(M.ring, I.ring(), "hom_from_ideal");
  const Ring& A = M.ring;
  const RingPtr& P = A.poly();
  const std::size_t g = M.gens;
  std::vector<Poly> f = reduced_generators(I);
  const std::size_t r = f.size();

  HomModule H{Ideal(A, f), M, {}, {}, {}};
  FreeSubmodule zero = H.zero_tuples();

  FreeSubmodule cols{A, 1, {}};
  for (const auto& p : f) cols.columns.push_back({p});
  std::vector<Vec> syz = r ? syzygies(cols).columns : std::vector<Vec>{};

  // (m_i) ∈ Hom iff Σ_i z_i m_i ∈ R for every syzygy z.
  std::vector<Vec> kernel;
  if (syz.empty()) {
    kernel = unit_vectors(P, g * r);
  } else {
    Matrix map{g * syz.size(), {}};
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t l = 0; l < g; ++l) {
        Vec col = zero_vec(P, map.rows);
        for (std::size_t k = 0; k < syz.size(); ++k) col[k * g + l] = syz[k][i];
        map.columns.push_back(std::move(col));
      }
    }
    kernel = kernel_mod(A, map, block_copies(M.relations, syz.size(), P));
  }
  for (auto& v : kernel)
    if (!zero.contains(v)) H.elements.push_back(std::move(v));

  const std::size_t k = H.elements.size();
  H.module = PresentedModule{A, k, {}};
  if (k) H.module.relations = kernel_mod(A, Matrix{g * r, H.elements}, zero.columns);

  std::vector<Vec> span = H.elements;
  span.insert(span.end(), zero.columns.begin(), zero.columns.end());
  H.canonical_map.rows = k;
  for (std::size_t l = 0; l < g; ++l) {
    std::vector<Vec> blocks;
    for (const auto& p : f) blocks.push_back(scale_vec(p, unit_vec(P, g, l)));
    auto coeffs = lift_coefficients(A, stack(blocks), span, g * r);
    if (!coeffs) throw Error(ErrorCode::Internal, "canonical image outside Hom(I, M)");
    coeffs->resize(k);
    H.canonical_map.columns.push_back(std::move(*coeffs));
  }
  return H;
}

FreeSubmodule hom_cross_relations(const Ideal& I, const PresentedModule& M) {
  require_same_ring(M.ring, I.ring(), "hom_cross_relations");
  const Ring& A = M.ring;
  const RingPtr& P = A.poly();
  const std::size_t g = M.gens;
  std::vector<Poly> f = reduced_generators(I);
  const std::size_t r = f.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) pairs.push_back({i, j});
  if (pairs.empty()) return {A, g * r, unit_vectors(P, g * r)};

  // block p = (i, j): f_i m_j − f_j m_i
  Matrix map{g * pairs.size(), {}};
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t l = 0; l < g; ++l) {
      Vec col = zero_vec(P, map.rows);
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        auto [i, j] = pairs[p];
        if (a == j) col[p * g + l] = f[i];
        if (a == i) col[p * g + l] = -f[j];
      }
      map.columns.push_back(std::move(col));
    }
  }
  return {A, g * r, kernel_mod(A, map, block_copies(M.relations, pairs.size(), P))};
}

DeepReport deep_report(const PresentedModule& M, unsigned d, const std::vector<Ideal>& family) {
  if (d < 1 || d > 2) throw Error(ErrorCode::InvalidArgument, "depth is decided for d in {1,2}");
  if (family.empty()) throw Error(ErrorCode::EmptyFamily, "support family is empty");
  DeepReport out;
  Torsion T = torsion_wrt(M, product_of(family));
  if (!T.is_zero()) {
    out.deep = false;
    out.failed_degree = 1;
    out.witness = T.generators.front();
    return out;
  }
  if (d == 1) return out;
  for (const auto& P0 : family) {
    HomModule H = hom_from_ideal(P0, M);
    FreeSubmodule img = H.image_tuples();
    for (const auto& h : H.elements) {
      if (img.contains(h)) continue;
      out.deep = false;
      out.failed_degree = 2;
      out.failing_ideal = P0;
      out.witness = h;
      return out;
    }
  }
  return out;
}

DeepReport deep_report(const PresentedModule& M, unsigned d, const PhiRing& A) {
  require_same_ring(M.ring, A.base(), "is_deep");
  return deep_report(M, d, A.phi0());
}

bool is_deep(const PresentedModule& M, unsigned d, const PhiRing& A) {
  return deep_report(M, d, A).deep;
}

Closure closure_wrt(const PresentedModule& M, const Ideal& I, unsigned max_steps) {
  const Ring& A = M.ring;
  const RingPtr& P = A.poly();
  const std::size_t g = M.gens;
  Torsion T = torsion_wrt(M, I);
  const FreeSubmodule& S = T.saturated;

  Closure out;
  out.torsion_free = T.is_zero();
  if (S.is_whole() || g == 0) {
    out.module = PresentedModule{A, 0, {}};
    out.structure_map = Matrix{0, std::vector<Vec>(g)};
    return out;
  }
  auto f = find_regular(S, I);
  if (!f)
    throw Error(ErrorCode::NoRegularElement,
                "no generator of " + I.str() + " is regular on the purification");
  out.regular = *f;

  std::vector<Vec> C = unit_vectors(P, g);
  unsigned n = 0;
  for (;; ++n) {
    if (n >= max_steps)
      throw Error(ErrorCode::NotStabilized,
                  "closure chain did not stabilize within " + std::to_string(max_steps) + " steps");
    FreeSubmodule B{A, g, S.columns};
    for (const auto& c : C) B.columns.push_back(scale_vec(*f, c));
    FreeSubmodule next = colon(B, I);
    if (B.contains(next)) break;
    C = next.reduced_columns();
  }
  out.steps = n;

  for (auto& c : C)
    if (!S.contains(c)) out.numerators.push_back(c);
  std::vector<Vec> sgens = S.reduced_columns();
  const std::size_t k = out.numerators.size();
  PresentedModule raw{A, k, {}};
  if (k) raw.relations = kernel_mod(A, Matrix{g, out.numerators}, sgens);

  Poly fn = f->pow(n);
  std::vector<Vec> span = out.numerators;
  span.insert(span.end(), sgens.begin(), sgens.end());
  Matrix raw_map{k, {}};
  for (std::size_t l = 0; l < g; ++l) {
    auto coeffs = lift_coefficients(A, scale_vec(fn, unit_vec(P, g, l)), span, g);
    if (!coeffs) throw Error(ErrorCode::Internal, "f^n e_l outside the closure chain");
    coeffs->resize(k);
    raw_map.columns.push_back(std::move(*coeffs));
  }

  if (n > 0) {
    FreeSubmodule base{A, g, sgens};
    for (std::size_t l = 0; l < g; ++l) base.columns.push_back(scale_vec(fn, unit_vec(P, g, l)));
    for (const auto& c : out.numerators) {
      if (!base.contains(c)) {
        out.extra = c;
        break;
      }
    }
  }

  Pruned pr = prune(raw);
  out.module = pr.module;
  out.structure_map.rows = pr.module.gens;
  for (const auto& col : raw_map.columns) {
    Vec img = combine(pr.projection, col, P);
    for (auto& p : img) p = A.reduce(p);
    out.structure_map.columns.push_back(std::move(img));
  }
  return out;
}

Closure closure(const PresentedModule& M, const PhiRing& A, unsigned max_steps) {
  require_same_ring(M.ring, A.base(), "closure");
  return closure_wrt(M, A.product(), max_steps);
}

namespace {

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

}  // namespace

CechResult cech_h(const PresentedModule& M, const Ideal& I, unsigned q, unsigned max_steps) {
  CechResult out;
  if (q == 0) {
    Torsion T = torsion_wrt(M, I);
    if (!T.is_zero()) {
      out.is_zero = false;
      out.witness = T.generators.front();
      out.description = "torsion class of " + vec_str(*out.witness);
    }
    return out;
  }
  if (q != 1) throw Error(ErrorCode::InvalidArgument, "cech_h is decided for q in {0,1}");
  Closure c = closure_wrt(M, I, max_steps);
  if (c.steps > 0) {
    out.is_zero = false;
    out.witness = c.extra;
    out.description = "x -> x * " + vec_str(*c.extra) + " / (" + c.regular->str() + ")^" +
                      std::to_string(c.steps) + " on " + I.str() + "^" + std::to_string(c.steps);
  }
  return out;
}

MayerVietoris mayer_vietoris(const PresentedModule& M, const Ideal& I, const Ideal& I2) {
  const Ring& A = M.ring;
  const RingPtr& P = A.poly();
  const std::size_t g = M.gens;
  FreeSubmodule R = M.relation_module();
  FreeSubmodule t1 = torsion_wrt(M, I).saturated;
  FreeSubmodule t2 = torsion_wrt(M, I2).saturated;
  FreeSubmodule tsum = torsion_wrt(M, I + I2).saturated;
  FreeSubmodule tprod = torsion_wrt(M, I * I2).saturated;

  MayerVietoris out;
  out.intersection_ok = tsum == intersect(t1, t2);
  out.difference_ok = tprod.contains(t1) && tprod.contains(t2);

  std::vector<Vec> a = t1.reduced_columns(), b = t2.reduced_columns();
  Matrix diff{g, a};
  for (const auto& v : b) diff.columns.push_back(scale_vec(-A.one(), v));
  FreeSubmodule diag{A, 2 * g, block_copies(R.columns, 2, P)};
  for (const auto& c : tsum.reduced_columns()) diag.columns.push_back(stack({c, c}));
  out.middle_exact = true;
  if (!diff.columns.empty()) {
    for (const auto& coeffs : kernel_mod(A, diff, R.columns)) {
      Vec x = zero_vec(P, g), y = zero_vec(P, g);
      for (std::size_t j = 0; j < a.size(); ++j) x = x + scale_vec(coeffs[j], a[j]);
      for (std::size_t j = 0; j < b.size(); ++j) y = y + scale_vec(coeffs[a.size() + j], b[j]);
      if (!diag.contains(stack({x, y}))) {
        out.middle_exact = false;
        break;
      }
    }
  }
  return out;
}

bool mv_check(const PresentedModule& M, const Ideal& I, const Ideal& I2) {
  return mayer_vietoris(M, I, I2).ok();
}

bool h_vanishing_transfer_check(const PresentedModule& M, const Ideal& I, const Ideal& J,
                                unsigned d, unsigned max_steps) {
  if (!J.contains(I)) throw Error(ErrorCode::InvalidArgument, "expected I ⊆ J");
  if (d > 2) throw Error(ErrorCode::InvalidArgument, "vanishing is decided below degree 2");
  for (unsigned q = 0; q < d; ++q)
    if (!cech_h(M, I, q, max_steps).is_zero) return true;
  for (unsigned q = 0; q < d; ++q)
    if (!cech_h(M, J, q, max_steps).is_zero) return false;
  return true;
}

}  // namespace phiflat
