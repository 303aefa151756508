#include "phiflat/blowup.hpp"

#include <algorithm>

#include "phiflat/error.hpp"

namespace phiflat {

std::string chart_variable_name(std::size_t j, std::size_t depth) {
  std::string s = "t" + std::to_string(j);
  if (depth > 1) s += "_" + std::to_string(depth);
  return s;
}

namespace {

/// g = c·x + h with c constant and h free of x.
std::optional<Poly> solve_linear(const Poly& g, std::size_t x) {
  Rational c = 0;
  std::vector<Term> rest;
  for (const auto& t : g.terms()) {
    if (t.mono[x] == 0) {
      rest.push_back(t);
    } else if (t.mono.degree() == 1) {
      c = t.coeff;
    } else {
      return std::nullopt;
    }
  }
  if (c == 0) return std::nullopt;
  return -Poly(g.ring(), rest).scaled(1 / c);
}

struct Eliminated {
  RingPtr ring;
  std::vector<Poly> relations;
  /// Image in `ring` of every variable of the starting ring.
  std::vector<Poly> images;
  /// Positions in the starting ring of the surviving variables.
  std::vector<std::size_t> kept;
};

/// Repeatedly drops a variable that some relation expresses in terms of the
/// others, trying variables in the order given by `preference`.
Eliminated eliminate_linear(const RingPtr& start, std::vector<Poly> rels,
                            const std::vector<std::size_t>& preference) {
  Eliminated cur{start, std::move(rels), {}, {}};
  for (std::size_t v = 0; v < start->nvars(); ++v) {
    cur.images.push_back(Poly::variable(start, v));
    cur.kept.push_back(v);
  }
  for (;;) {
    bool done = true;
    for (std::size_t orig : preference) {
      auto pos = std::find(cur.kept.begin(), cur.kept.end(), orig);
      if (pos == cur.kept.end()) continue;
      std::size_t x = pos - cur.kept.begin();
      std::optional<Poly> h;
      std::size_t used = 0;
      for (std::size_t k = 0; k < cur.relations.size() && !h; ++k) {
        h = solve_linear(cur.relations[k], x);
        used = k;
      }
      if (!h) continue;

      std::vector<std::string> names;
      for (std::size_t v = 0; v < cur.ring->nvars(); ++v)
        if (v != x) names.push_back(cur.ring->var(v));
      RingPtr next = make_poly_ring(names, cur.ring->order());
      std::vector<Poly> step;
      for (std::size_t v = 0, w = 0; v < cur.ring->nvars(); ++v)
        step.push_back(v == x ? Poly(next) : Poly::variable(next, w++));
      step[x] = h->substitute(step, next);

      std::vector<Poly> rels;
      for (std::size_t k = 0; k < cur.relations.size(); ++k)
        if (k != used) rels.push_back(cur.relations[k].substitute(step, next));
      for (auto& img : cur.images) img = img.substitute(step, next);
      cur.kept.erase(pos);
      cur.ring = next;
      cur.relations = Ideal(Ring::polynomial(next), rels).reduced_gens();
      done = false;
      break;
    }
    if (done) return cur;
  }
}

}  // namespace

BlowUpChart rees_chart(const Ring& A, const Ideal& I, std::size_t i, std::size_t depth) {
  require_same_ring(A, I.ring(), "rees_chart");
  std::vector<Poly> f;
  for (const auto& g : I.gens()) f.push_back(A.reduce(g));
  if (i >= f.size()) throw Error(ErrorCode::InvalidArgument, "chart index out of range");
  if (f[i].is_zero())
    throw Error(ErrorCode::ZeroGenerator, "generator " + std::to_string(i + 1) + " is zero");

  const RingPtr& P = A.poly();
  const std::size_t n = P->nvars();
  std::vector<std::string> names = P->vars();
  std::vector<std::size_t> tvar(f.size(), 0);
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (j == i) continue;
    std::string t = chart_variable_name(j + 1, depth);
    if (std::find(names.begin(), names.end(), t) != names.end())
      throw Error(ErrorCode::NameCollision, "chart variable " + t + " already exists");
    tvar[j] = names.size();
    names.push_back(t);
  }
  RingPtr big = make_poly_ring(names, P->order());
  std::vector<Poly> gens;
  for (const auto& r : A.relations()) gens.push_back(r.in_ring(big));
  Poly fi = f[i].in_ring(big);
  for (std::size_t j = 0; j < f.size(); ++j)
    if (j != i) gens.push_back(f[j].in_ring(big) - Poly::variable(big, tvar[j]) * fi);
  Ring bigR = Ring::polynomial(big);
  std::vector<Poly> sat = saturate(Ideal(bigR, gens), Ideal(bigR, {fi})).result.reduced_gens();

  std::vector<std::size_t> preference;
  for (std::size_t v = 0; v < names.size(); ++v) preference.push_back(v);
  Eliminated e = eliminate_linear(big, sat, preference);

  BlowUpChart c;
  c.parent = A;
  c.center = Ideal(A, f);
  c.index = i;
  c.depth = depth;
  c.ring = Ring(e.ring, e.relations, A.known_domain());
  std::vector<Poly> parent_images(e.images.begin(), e.images.begin() + n);
  for (auto& p : parent_images) p = c.ring.reduce(p);
  c.structure = RingMap{A, c.ring, parent_images};
  for (std::size_t orig : e.kept) {
    if (orig < n) {
      c.origin.push_back(static_cast<long>(orig));
    } else {
      std::size_t j = std::find(tvar.begin(), tvar.end(), orig) - tvar.begin();
      c.origin.push_back(-static_cast<long>(j) - 1);
    }
  }
  for (const auto& fj : f) c.center_images.push_back(c.structure.apply(fj));
  c.exceptional = c.center_images[i];
  return c;
}

Saturation<PresentedModule> strict_transform(const PresentedModule& M, const BlowUpChart& chart) {
  require_same_ring(M.ring, chart.parent, "strict_transform");
  FreeSubmodule pulled{chart.ring, M.gens, {}};
  for (const auto& r : M.relations) pulled.columns.push_back(chart.structure.apply(r));
  auto sat = saturate(pulled, Ideal(chart.ring, {chart.exceptional}));
  return {PresentedModule{chart.ring, M.gens, sat.result.reduced_columns()}, sat.exponent};
}

PresentedModule strict_transform_module(const PresentedModule& M, const BlowUpChart& chart) {
  return strict_transform(M, chart).result;
}

Algebra Algebra::make(const Ring& base, std::vector<std::string> extra,
                      std::vector<std::string> relations) {
  std::vector<std::string> names = base.poly()->vars();
  names.insert(names.end(), extra.begin(), extra.end());
  RingPtr P = make_poly_ring(names, base.poly()->order());
  std::vector<Poly> rels;
  for (const auto& r : base.relations()) rels.push_back(r.in_ring(P));
  for (const auto& s : relations) rels.push_back(parse_poly(P, s));
  return Algebra{base, Ring(P, rels)};
}

Algebra strict_transform_algebra(const Algebra& B, const BlowUpChart& chart) {
  require_same_ring(B.base, chart.parent, "strict_transform_algebra");
  const RingPtr& C = chart.ring.poly();
  std::vector<std::string> names = C->vars();
  const std::size_t nb = B.base.nvars();
  for (std::size_t k = nb; k < B.ring.nvars(); ++k) {
    const std::string& y = B.ring.poly()->var(k);
    if (std::find(names.begin(), names.end(), y) != names.end())
      throw Error(ErrorCode::NameCollision, "algebra variable " + y + " clashes with the chart");
    names.push_back(y);
  }
  RingPtr P = make_poly_ring(names, C->order());
  std::vector<Poly> images;
  for (const auto& img : chart.structure.images) images.push_back(img.in_ring(P));
  for (std::size_t k = 0; k < B.extra_vars(); ++k)
    images.push_back(Poly::variable(P, C->nvars() + k));
  std::vector<Poly> rels;
  for (const auto& r : chart.ring.relations()) rels.push_back(r.in_ring(P));
  for (const auto& r : B.ring.relations()) rels.push_back(r.substitute(images, P));
  Ring lifted = Ring::polynomial(P);
  auto sat = saturate(Ideal(lifted, rels), Ideal(lifted, {chart.exceptional.in_ring(P)}));
  return Algebra{chart.ring, Ring(P, sat.result.reduced_gens())};
}

std::vector<Poly> BlowUpSequence::exceptional() const {
  std::vector<Poly> out;
  for (const auto& s : stages) out.push_back(s.chart.exceptional);
  return out;
}

BlowUpSequence compose(const BlowUpSequence& seq, const Ideal& center, std::size_t index) {
  const PhiRing& cur = seq.current();
  Admissibility adm = is_admissible(cur, center);
  if (!adm.admissible)
    throw Error(ErrorCode::InadmissibleCenter,
                "center " + center.str() + " is not admissible at stage " +
                    std::to_string(seq.stages.size()));
  BlowUpSequence out = seq;
  BlowUpStage st;
  st.center = center;
  st.index = index;
  st.admissibility_exponent = adm.exponent.value_or(0);
  st.chart = rees_chart(cur.base(), center, index, seq.stages.size() + 1);
  st.supports = induced_supports(st.chart.structure, cur, cur.degenerate_ok());
  out.stages.push_back(std::move(st));
  return out;
}

}  // namespace phiflat
