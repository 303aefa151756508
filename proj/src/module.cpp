#include "phiflat/module.hpp"

#include "phiflat/error.hpp"

namespace phiflat {

PresentedModule PresentedModule::free(const Ring& ring, std::size_t rank) {
  return PresentedModule{ring, rank, {}};
}

PresentedModule PresentedModule::cyclic(const Ideal& I) {
  PresentedModule M{I.ring(), 1, {}};
  for (const auto& g : I.gens()) M.relations.push_back({g});
  return M;
}

PresentedModule PresentedModule::ideal_module(const Ideal& I) {
  FreeSubmodule cols{I.ring(), 1, {}};
  for (const auto& g : I.gens()) cols.columns.push_back({g});
  FreeSubmodule syz = syzygies(cols);
  return PresentedModule{I.ring(), I.gens().size(), syz.columns};
}

PresentedModule PresentedModule::canonical() const {
  return PresentedModule{ring, gens, relation_module().reduced_columns()};
}

bool PresentedModule::is_zero() const { return gens == 0 || relation_module().is_whole(); }

bool PresentedModule::same_presentation(const PresentedModule& o) const {
  return gens == o.gens && relation_module() == o.relation_module();
}

std::string PresentedModule::str() const {
  std::string s = "coker [";
  for (std::size_t r = 0; r < gens; ++r) {
    if (r) s += ", ";
    s += "[";
    for (std::size_t c = 0; c < relations.size(); ++c) {
      if (c) s += ", ";
      s += relations[c][r].str();
    }
    s += "]";
  }
  return s + "]";
}

PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b) {
  require_same_ring(a.ring, b.ring, "direct_sum");
  const RingPtr& P = a.ring.poly();
  PresentedModule out{a.ring, a.gens + b.gens, {}};
  for (const auto& r : a.relations) {
    Vec v = zero_vec(P, out.gens);
    for (std::size_t i = 0; i < a.gens; ++i) v[i] = r[i];
    out.relations.push_back(std::move(v));
  }
  for (const auto& r : b.relations) {
    Vec v = zero_vec(P, out.gens);
    for (std::size_t i = 0; i < b.gens; ++i) v[a.gens + i] = r[i];
    out.relations.push_back(std::move(v));
  }
  return out;
}

Vec combine(const Matrix& m, const Vec& coeffs, const RingPtr& ring) {
  Vec out = zero_vec(ring, m.rows);
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (!coeffs[j].is_zero()) out = out + scale_vec(coeffs[j], m.columns[j]);
  return out;
}

namespace {

Vec drop_row(const Vec& v, std::size_t k) {
  Vec out;
  out.reserve(v.size() - 1);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i != k) out.push_back(v[i]);
  return out;
}

/// One elimination pass; returns false when no relation has a unit entry.
bool eliminate_one(const Ring& ring, std::size_t& gens, std::vector<Vec>& rels,
                   std::vector<Vec>& proj) {
  for (std::size_t k = 0; k < gens; ++k) {
    for (std::size_t c = 0; c < rels.size(); ++c) {
      const Poly& e = rels[c][k];
      if (e.is_zero() || !e.is_constant()) continue;
      Vec pivot = rels[c];
      Rational inv = 1 / e.leading().coeff;
      auto clear = [&](Vec& v) {
        if (v[k].is_zero()) return;
        Poly factor = v[k].scaled(inv);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = ring.reduce(v[i] - factor * pivot[i]);
      };
      std::vector<Vec> next;
      for (std::size_t d = 0; d < rels.size(); ++d) {
        if (d == c) continue;
        Vec v = rels[d];
        clear(v);
        v = drop_row(v, k);
        if (!is_zero_vec(v)) next.push_back(std::move(v));
      }
      for (auto& p : proj) {
        clear(p);
        p = drop_row(p, k);
      }
      rels = std::move(next);
      --gens;
      return true;
    }
  }
  return false;
}

}  // namespace

Pruned prune(const PresentedModule& M) {
  const RingPtr& P = M.ring.poly();
  std::size_t gens = M.gens;
  std::vector<Vec> rels;
  for (const auto& r : M.relations) {
    Vec v;
    for (const auto& p : r) v.push_back(M.ring.reduce(p));
    if (!is_zero_vec(v)) rels.push_back(std::move(v));
  }
  std::vector<Vec> proj;
  for (std::size_t i = 0; i < M.gens; ++i) proj.push_back(unit_vec(P, M.gens, i));

  for (;;) {
    bool changed = false;
    while (eliminate_one(M.ring, gens, rels, proj)) changed = true;
    rels = FreeSubmodule{M.ring, gens, rels}.reduced_columns();
    if (!changed) break;
  }
  // A unit entry may only appear after the basis computation.
  while (eliminate_one(M.ring, gens, rels, proj))
    rels = FreeSubmodule{M.ring, gens, rels}.reduced_columns();

  Pruned out{PresentedModule{M.ring, gens, std::move(rels)}, Matrix{gens, std::move(proj)}};
  return out;
}

}  // namespace phiflat

namespace phiflat {

namespace {

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  subsets(n, k, 0, cur, out);
  return out;
}

/// Laplace expansion along the first row.
Poly det(const Ring& A, const std::vector<std::vector<Poly>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Poly out = A.zero();
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Poly>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      sub.push_back(std::move(row));
    }
    Poly term = m[0][c] * det(A, sub);
    out = (c % 2 == 0) ? out + term : out - term;
  }
  return A.reduce(out);
}

}  // namespace

std::vector<Poly> minors(const PresentedModule& M, std::size_t k) {
  std::vector<Poly> out;
  if (k == 0) return {M.ring.one()};
  if (k > M.gens || k > M.relations.size()) return out;
  auto rows = subsets(M.gens, k);
  auto cols = subsets(M.relations.size(), k);
  for (const auto& rs : rows) {
    for (const auto& cs : cols) {
      std::vector<std::vector<Poly>> m;
      for (auto r : rs) {
        std::vector<Poly> row;
        for (auto c : cs) row.push_back(M.relations[c][r]);
        m.push_back(std::move(row));
      }
      out.push_back(det(M.ring, m));
    }
  }
  return out;
}

Ideal fitting_ideal(const PresentedModule& M, std::size_t i) {
  if (i >= M.gens) return Ideal::unit(M.ring);
  std::vector<Poly> gens;
  for (auto& p : minors(M, M.gens - i))
    if (!p.is_zero()) gens.push_back(std::move(p));
  return Ideal(M.ring, std::move(gens));
}

}  // namespace phiflat
