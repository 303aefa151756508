#include "phiflat/philocal.hpp"

#include "phiflat/depth.hpp"
#include "phiflat/error.hpp"

namespace phiflat {

PhiLocalModel PhiLocalModel::make(RingPtr ring, ValuationData v, std::optional<std::size_t> split) {
  if (v.nvars() != ring->nvars())
    throw Error(ErrorCode::RingMismatch, "valuation does not match " + ring->str());
  std::size_t j = split.value_or(v.rank());
  if (j < 1 || j > v.rank() + 1)
    throw Error(ErrorCode::InvalidArgument, "split index out of range");
  return PhiLocalModel{std::move(ring), std::move(v), j};
}

bool PhiLocalModel::is_admissible_element(const Poly& f) const {
  Value v = value(f);
  return !v.infinite && v.nonnegative() && coarse(v).is_zero();
}

std::size_t admissible_gen(const PhiLocalModel& model, const std::vector<Poly>& gens) {
  if (gens.empty()) throw Error(ErrorCode::NotAdmissible, "the zero ideal is not admissible");
  std::size_t best = 0;
  Value best_v = model.value(gens[0]);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Value v = model.value(gens[i]);
    if (!v.nonnegative())
      throw Error(ErrorCode::InvalidArgument, gens[i].str() + " is not in the valuation ring");
    if (v < best_v) {
      best = i;
      best_v = v;
    }
  }
  if (!model.is_admissible_element(gens[best]))
    throw Error(ErrorCode::NotAdmissible,
                "smallest value " + best_v.str() + " lies in the maximal ideal of the closure");
  return best;
}

namespace {

/// I(A/m) ⊆ g(A/m), computed with residues only.
bool residue_contained(const PhiLocalModel& model, const std::vector<Poly>& I, const Poly& g) {
  bool g_in_m = model.in_m(g);
  Value rg = model.residue(model.value(g));
  for (const auto& f : I) {
    if (model.in_m(f)) continue;
    if (g_in_m) return false;
    if (model.residue(model.value(f)) < rg) return false;
  }
  return true;
}

bool full_contained(const PhiLocalModel& model, const std::vector<Poly>& I, const Poly& g) {
  Value vg = model.value(g);
  for (const auto& f : I)
    if (model.value(f) < vg) return false;
  return true;
}

}  // namespace

StructureReport structure_check(const PhiLocalModel& model, const std::vector<Poly>& samples,
                                const std::vector<IdealElementPair>& pairs) {
  StructureReport rep;
  auto fail = [&](std::string what) { rep.violations.push_back(std::move(what)); };

  for (const auto& f : samples) {
    ++rep.checks;
    if (!model.in_A(f)) {
      fail("sample " + f.str() + " is outside A");
      continue;
    }
    Value v = model.value(f);
    // fA is admissible iff f is invertible in B, i.e. −v(f) has v' ≥ 0
    bool unit_in_B = !v.infinite && model.coarse(Value::zero(v.rank()) - v).nonnegative();
    if (unit_in_B == model.in_m(f)) fail("(iii) fails for " + f.str());
  }

  std::vector<IdealElementPair> all = pairs;
  for (const auto& a : samples) {
    for (const auto& b : samples) {
      if (!model.in_A(a) || !model.in_A(b)) continue;
      all.push_back({{a}, b});
      if (model.in_m(a) || model.in_m(b)) continue;
      ++rep.checks;
      Value va = model.value(a), vb = model.value(b);
      bool residue_ge = model.residue(va) >= model.residue(vb);
      if (residue_ge != (va >= vb)) fail("(iv) residue comparison of " + a.str() + ", " + b.str());
    }
  }

  for (const auto& [I, g] : all) {
    std::vector<Poly> gens = I;
    gens.push_back(g);
    try {
      admissible_gen(model, gens);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotAdmissible) continue;
      throw;
    }
    ++rep.checks;
    if (residue_contained(model, I, g) != full_contained(model, I, g))
      fail("(vii) fails for g = " + g.str());
  }
  return rep;
}

PushResult push_valuation(const PhiRing& A, const ValuationData& S) {
  const Ring& base = A.base();
  if (base.is_quotient())
    throw Error(ErrorCode::InvalidArgument, "valuations are pushed over polynomial bases only");
  if (S.nvars() != base.nvars()) throw Error(ErrorCode::RingMismatch, "valuation size mismatch");
  if (!S.nonnegative())
    throw Error(ErrorCode::InvalidArgument, "valuation is negative on a base variable");

  PushResult out;
  out.w0 = S.value(A.product().gens());
  if (out.w0.infinite)
    throw Error(ErrorCode::ZeroAdmissibleImage, "the support product has infinite value");
  const std::size_t k = S.rank();
  out.j = k + 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (out.w0.w[i] != 0) {
      out.j = i + 1;
      break;
    }
  }
  std::vector<Poly> pvars;
  std::vector<bool> in_p(base.nvars(), false);
  for (std::size_t x = 0; x < base.nvars(); ++x) {
    if (S.of_variable(x).slice(0, out.j - 1).positive()) {
      in_p[x] = true;
      pvars.push_back(base.var(x));
    }
  }
  out.p = Ideal(base, std::move(pvars));
  out.R = S.rows(out.j - 1, k, in_p);
  out.c_holds = false;
  for (const auto& g : A.product().gens())
    if (!out.p.contains(g)) out.c_holds = true;
  return out;
}

std::optional<bool> push_property_d(const PushResult& push, const PhiRing& A,
                                    const ValuationData& S, const std::vector<Poly>& I,
                                    const Poly& g) {
  std::vector<Poly> gens = I;
  gens.push_back(g);
  if (!is_admissible(A, Ideal(A.base(), gens)).admissible) return std::nullopt;
  auto contained = [&](const ValuationData& v) {
    Value vg = v.value(g);
    for (const auto& f : I)
      if (v.value(f) < vg) return false;
    return true;
  };
  return contained(push.R) == contained(S);
}

namespace {

/// Every term involves one of the flagged variables.
bool in_variable_prime(const Poly& f, const std::vector<bool>& flagged) {
  for (const auto& t : f.terms()) {
    bool hit = false;
    for (std::size_t i = 0; i < flagged.size(); ++i)
      if (flagged[i] && t.mono[i] > 0) hit = true;
    if (!hit) return false;
  }
  return true;
}

}  // namespace

FlatVerdict flat_over_philocal(const PhiLocalModel& model, const PresentedModule& M,
                               const std::vector<Poly>& s_gen) {
  if (!same_ring(M.ring.poly(), model.ring) || M.ring.is_quotient())
    throw Error(ErrorCode::RingMismatch, "module must be presented over " + model.ring->str());
  const ValuationData& V = model.valuation;
  if (!V.nonnegative())
    throw Error(ErrorCode::InvalidArgument, "model valuation is negative on a variable");
  const RingPtr& P = model.ring;
  const std::size_t n = P->nvars();

  // M ⊗ Q[x]/(variables of infinite value)
  std::vector<Poly> images;
  std::vector<bool> center(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    images.push_back(V.is_infinite(i) ? Poly(P) : Poly::variable(P, i));
    center[i] = V.of_variable(i).positive();
  }
  PresentedModule N{M.ring, M.gens, {}};
  for (const auto& r : M.relations) {
    Vec v;
    for (const auto& e : r) v.push_back(e.substitute(images, P));
    N.relations.push_back(std::move(v));
  }

  FlatVerdict out;
  for (std::size_t i = 0; i < n; ++i) {
    Value v = V.of_variable(i);
    if (v.infinite || !v.positive() || !model.coarse(v).is_zero()) continue;
    Poly x = Poly::variable(P, i);
    bool listed = false;
    for (const auto& s : s_gen) listed = listed || s == x;
    if (!listed) out.warnings.push_back("IncompleteTorsionTest: " + x.str() + " not in S_gen");
  }

  // Fitting criterion over B: Fitt_{r-1} ⊗ B = 0 and Fitt_r ⊗ B = B.
  std::size_t r = 0;
  Ideal fitt;
  for (;; ++r) {
    fitt = fitting_ideal(N, r);
    if (!fitt.gens().empty()) break;
  }
  bool unit = false;
  for (const auto& f : fitt.gens()) unit = unit || !model.in_m(f);
  if (!unit) {
    out.reason = "fitting";
    out.fitting_witness = fitt.gens();
    return out;
  }
  out.rank = r;

  // M → M ⊗ B is injective iff no s-torsion element survives at the center.
  FreeSubmodule R = N.relation_module();
  for (const auto& s : s_gen) {
    if (!model.is_admissible_element(s))
      throw Error(ErrorCode::NotAdmissible, s.str() + " does not generate an admissible ideal");
    Torsion T = torsion_wrt(N, Ideal(N.ring, {s}));
    for (const auto& t : T.generators) {
      std::vector<Vec> ann = kernel_mod(N.ring, Matrix{N.gens, {t}}, R.columns);
      bool survives = true;
      for (const auto& a : ann) survives = survives && in_variable_prime(a[0], center);
      if (!survives) continue;
      out.reason = "torsion";
      out.torsion_by = s;
      out.torsion_element = t;
      return out;
    }
  }
  out.flat = true;
  return out;
}

}  // namespace phiflat
