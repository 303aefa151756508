#include "phiflat/groebner.hpp"

#include <algorithm>
#include <cassert>

#include "phiflat/error.hpp"

namespace phiflat::gb {

namespace {

/// a[a_from..] - q * m * g[g_from..]
SVec sub_scaled(const SVec& a, std::size_t a_from, const SVec& g, std::size_t g_from,
                const Monomial& m, const Rational& q, const ModuleOrder& ord) {
  SVec out;
  out.reserve(a.size() - a_from + g.size() - g_from);
  std::size_t i = a_from, j = g_from;
  VTerm shifted;
  bool have = false;
  auto load = [&]() {
    if (j < g.size()) {
      shifted.mono = g[j].mono * m;
      shifted.comp = g[j].comp;
      shifted.coeff = g[j].coeff * q;
      have = true;
    } else {
      have = false;
    }
  };
  load();
  while (i < a.size() && have) {
    int c = ord.compare(a[i], shifted);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      shifted.coeff = -shifted.coeff;
      out.push_back(std::move(shifted));
      ++j;
      load();
    } else {
      Rational s = a[i].coeff - shifted.coeff;
      if (s != 0) out.push_back({a[i].mono, a[i].comp, std::move(s)});
      ++i;
      ++j;
      load();
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  while (have) {
    shifted.coeff = -shifted.coeff;
    out.push_back(std::move(shifted));
    ++j;
    load();
  }
  return out;
}

void make_monic(SVec& v) {
  if (v.empty() || v.front().coeff == 1) return;
  Rational inv = 1 / v.front().coeff;
  for (auto& t : v) t.coeff *= inv;
}

struct LeadIndex {
  std::vector<const VTerm*> leads;

  void push(const SVec& v) { leads.push_back(&v.front()); }

  /// Index of the first element whose leading term divides `t`, or -1.
  long find(const VTerm& t) const {
    for (std::size_t k = 0; k < leads.size(); ++k) {
      const VTerm* l = leads[k];
      if (l->comp == t.comp && l->mono.degree() <= t.mono.degree() && l->mono.divides(t.mono))
        return static_cast<long>(k);
    }
    return -1;
  }
};

SVec reduce_with(const SVec& v, const std::vector<SVec>& elems, const LeadIndex& idx,
                 const ModuleOrder& ord, long skip = -1) {
  SVec result;
  SVec p = v;
  std::size_t pos = 0;
  while (pos < p.size()) {
    const VTerm& t = p[pos];
    long k = -1;
    for (std::size_t e = 0; e < idx.leads.size(); ++e) {
      if (static_cast<long>(e) == skip) continue;
      const VTerm* l = idx.leads[e];
      if (l->comp == t.comp && l->mono.degree() <= t.mono.degree() && l->mono.divides(t.mono)) {
        k = static_cast<long>(e);
        break;
      }
    }
    if (k < 0) {
      result.push_back(t);
      ++pos;
      continue;
    }
    const SVec& g = elems[k];
    Rational q = t.coeff / g.front().coeff;
    Monomial m = t.mono / g.front().mono;
    p = sub_scaled(p, pos + 1, g, 1, m, q, ord);
    pos = 0;
  }
  return result;
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  uint32_t comp;
};

}  // namespace

bool Basis::is_whole() const {
  // Whole module iff every e_c (c < rank) is a leading term.
  std::vector<bool> hit(rank, false);
  for (const auto& e : elems)
    if (e.front().mono.is_one() && e.front().comp < rank) hit[e.front().comp] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

SVec to_svec(const Vec& v) {
  SVec out;
  for (std::size_t c = 0; c < v.size(); ++c)
    for (const auto& t : v[c].terms())
      out.push_back({t.mono, static_cast<uint32_t>(c), t.coeff});
  return out;
}

Vec to_vec(const SVec& s, const RingPtr& ring, std::size_t rank) {
  std::vector<std::vector<Term>> parts(rank);
  for (const auto& t : s) {
    if (t.comp >= rank) throw Error(ErrorCode::Internal, "component out of range");
    parts[t.comp].push_back({t.mono, t.coeff});
  }
  Vec out;
  out.reserve(rank);
  for (auto& p : parts) out.emplace_back(ring, std::move(p));
  return out;
}

Basis groebner(std::vector<SVec> gens, std::size_t nvars, std::size_t rank,
               const MonomialOrder& order) {
  Basis basis;
  basis.nvars = nvars;
  basis.rank = rank;
  basis.order = ModuleOrder{order};
  const ModuleOrder& ord = basis.order;

  gens.erase(std::remove_if(gens.begin(), gens.end(), [](const SVec& v) { return v.empty(); }),
             gens.end());
  std::stable_sort(gens.begin(), gens.end(), [&](const SVec& a, const SVec& b) {
    return ord.compare(a.front(), b.front()) < 0;
  });

  std::vector<SVec> G;
  G.reserve(gens.size() * 2 + 8);
  LeadIndex idx;
  std::vector<Pair> queue;
  // pending[j][i] for i < j
  std::vector<std::vector<uint8_t>> pending;
  const bool coprime_ok = rank == 1;

  auto is_pending = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return pending[b][a] != 0;
  };

  auto add_element = [&](SVec h) {
    make_monic(h);
    std::size_t n = G.size();
    G.push_back(std::move(h));
    // Pointers into G stay valid only without reallocation; rebuild on growth.
    idx.leads.clear();
    for (const auto& g : G) idx.push(g);
    pending.emplace_back(n, 0);
    const VTerm& lt = G[n].front();
    for (std::size_t k = 0; k < n; ++k) {
      const VTerm& lk = G[k].front();
      if (lk.comp != lt.comp) continue;
      if (coprime_ok && lk.mono.coprime(lt.mono)) continue;
      queue.push_back({k, n, Monomial::lcm(lk.mono, lt.mono), lt.comp});
      pending[n][k] = 1;
    }
  };

  for (auto& g : gens) {
    SVec h = reduce_with(g, G, idx, ord);
    if (!h.empty()) add_element(std::move(h));
  }

  while (!queue.empty()) {
    // Normal strategy: smallest lcm degree, then smallest in module order.
    std::size_t best = 0;
    for (std::size_t q = 1; q < queue.size(); ++q) {
      const Pair& a = queue[q];
      const Pair& b = queue[best];
      if (a.lcm.degree() != b.lcm.degree()) {
        if (a.lcm.degree() < b.lcm.degree()) best = q;
        continue;
      }
      VTerm ta{a.lcm, a.comp, 0}, tb{b.lcm, b.comp, 0};
      if (ord.compare(ta, tb) < 0) best = q;
    }
    Pair pr = std::move(queue[best]);
    queue[best] = std::move(queue.back());
    queue.pop_back();
    pending[pr.j][pr.i] = 0;

    bool skip = false;
    for (std::size_t k = 0; k < G.size() && !skip; ++k) {
      if (k == pr.i || k == pr.j) continue;
      const VTerm& lk = G[k].front();
      if (lk.comp != pr.comp || !lk.mono.divides(pr.lcm)) continue;
      if (!is_pending(pr.i, k) && !is_pending(pr.j, k)) skip = true;
    }
    if (skip) continue;

    const SVec& gi = G[pr.i];
    const SVec& gj = G[pr.j];
    Monomial mi = pr.lcm / gi.front().mono;
    Monomial mj = pr.lcm / gj.front().mono;
    // s = mi*gi - mj*gj with the leading terms cancelled.
    SVec left;
    left.reserve(gi.size());
    for (std::size_t t = 1; t < gi.size(); ++t)
      left.push_back({gi[t].mono * mi, gi[t].comp, gi[t].coeff});
    SVec s = sub_scaled(left, 0, gj, 1, mj, Rational(1), ord);
    SVec h = reduce_with(s, G, idx, ord);
    if (!h.empty()) add_element(std::move(h));
  }

  // Minimalize: drop elements whose leading term is divisible by another's.
  std::vector<SVec> minimal;
  for (std::size_t a = 0; a < G.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < G.size() && !redundant; ++b) {
      if (a == b) continue;
      const VTerm& la = G[a].front();
      const VTerm& lb = G[b].front();
      if (la.comp != lb.comp || !lb.mono.divides(la.mono)) continue;
      // Equal leading terms cannot coexist (later ones were reduced), but
      // keep the earlier one if they do.
      if (lb.mono == la.mono && b > a) continue;
      redundant = true;
    }
    if (!redundant) minimal.push_back(G[a]);
  }

  // Interreduce tails.
  LeadIndex midx;
  for (const auto& g : minimal) midx.push(g);
  std::vector<SVec> reduced;
  reduced.reserve(minimal.size());
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    SVec tail(minimal[a].begin() + 1, minimal[a].end());
    SVec r = reduce_with(tail, minimal, midx, ord);
    SVec full;
    full.reserve(r.size() + 1);
    full.push_back(minimal[a].front());
    for (auto& t : r) full.push_back(std::move(t));
    make_monic(full);
    reduced.push_back(std::move(full));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const SVec& a, const SVec& b) {
    return ord.compare(a.front(), b.front()) < 0;
  });
  basis.elems = std::move(reduced);
  return basis;
}

SVec normal_form(const SVec& v, const Basis& basis) {
  LeadIndex idx;
  for (const auto& g : basis.elems) idx.push(g);
  return reduce_with(v, basis.elems, idx, basis.order);
}

bool reduces_to_zero(const SVec& v, const Basis& basis) { return normal_form(v, basis).empty(); }

bool same_basis(const Basis& a, const Basis& b) {
  if (a.rank != b.rank || a.elems.size() != b.elems.size()) return false;
  for (std::size_t i = 0; i < a.elems.size(); ++i) {
    const SVec& x = a.elems[i];
    const SVec& y = b.elems[i];
    if (x.size() != y.size()) return false;
    for (std::size_t t = 0; t < x.size(); ++t) {
      if (x[t].comp != y[t].comp || x[t].coeff != y[t].coeff || x[t].mono != y[t].mono)
        return false;
    }
  }
  return true;
}

}  // namespace phiflat::gb
