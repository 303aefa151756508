#include "phiflat/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

#include "phiflat/blowup.hpp"
#include "phiflat/error.hpp"
#include "phiflat/philocal.hpp"
#include "phiflat/valuative.hpp"

namespace phiflat {

using nlohmann::json;

namespace {

json polys(const std::vector<Poly>& ps) {
  json j = json::array();
  for (const auto& p : ps) j.push_back(p.str());
  return j;
}

json opt_vec(const std::optional<Vec>& v) { return v ? polys(*v) : json(nullptr); }
json opt_poly(const std::optional<Poly>& p) { return p ? json(p->str()) : json(nullptr); }

Error invalid(const std::string& what) { return Error(ErrorCode::InvalidArgument, what); }

const Ring& ring_of(const Session& s, const std::string& name) { return s.ring(name); }

/// Optional ideal: the named one, the last one, or none when nothing is bound.
const IdealBinding* maybe_ideal(const Session& s, const std::string& name) {
  if (!name.empty()) return &s.get<IdealBinding>(name, "ideal");
  for (auto it = s.bindings.rbegin(); it != s.bindings.rend(); ++it)
    if (auto i = std::get_if<IdealBinding>(&*it)) return i;
  return nullptr;
}

PhiLocalModel model_of(const Session& s, const RunOptions& o) {
  const auto& v = s.get<ValuationBinding>(o.valuation, "valuation");
  const Ring& R = ring_of(s, v.ring);
  if (R.is_quotient()) throw invalid("valuations are defined over polynomial rings");
  return PhiLocalModel::make(R.poly(), v.valuation,
                             o.split ? std::optional<std::size_t>(o.split) : std::nullopt);
}

std::vector<Value> values_of(const ValuationData& v, const std::vector<Poly>& ps) {
  std::vector<Value> out;
  for (const auto& p : ps) out.push_back(v.value(p));
  return out;
}

json values_json(const std::vector<Value>& vs) {
  json j = json::array();
  for (const auto& v : vs) j.push_back(v.str());
  return j;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t c = s.find(',', start);
    out.push_back(s.substr(start, c - start));
    if (c == std::string::npos) return out;
    start = c + 1;
  }
}

json chart_json(const BlowUpChart& c) {
  json origin = json::array();
  for (long o : c.origin) {
    if (o >= 0)
      origin.push_back(c.parent.poly()->var(static_cast<std::size_t>(o)));
    else
      origin.push_back("f" + std::to_string(-o) + "/f" + std::to_string(c.index + 1));
  }
  return json{{"ring", ring_json(c.ring)},
              {"structure", polys(c.structure.images)},
              {"exceptional", c.exceptional.str()},
              {"center_images", polys(c.center_images)},
              {"origin", origin}};
}

json dispatch(const Session& s, const RunOptions& o, int& code) {
  const std::string& cmd = o.command;
  if (cmd == "groebner") {
    const auto& I = s.get<IdealBinding>(o.ideal, "ideal");
    return json{{"ideal", I.name}, {"basis", polys(groebner_basis(I.ideal))},
                {"order", I.ideal.ring().poly()->order().name()}};
  }
  if (cmd == "admissible") {
    const auto& A = s.get<SupportsBinding>(o.supports, "supports");
    const auto& I = s.get<IdealBinding>(o.ideal, "ideal");
    Admissibility a = is_admissible(A.supports, I.ideal);
    return json{{"admissible", a.admissible},
                {"exponent", a.exponent ? json(*a.exponent) : json(nullptr)},
                {"exponent_unknown", a.exponent_unknown},
                {"witness", opt_poly(a.witness)}};
  }
  if (cmd == "purify") {
    const auto& A = s.get<SupportsBinding>(o.supports, "supports");
    const auto& M = s.get<ModuleBinding>(o.module, "module");
    Torsion t = torsion_H0(M.module, A.supports);
    json gens = json::array();
    for (const auto& g : t.generators) gens.push_back(polys(g));
    return json{{"torsion", gens}, {"exponent", t.exponent},
                {"purified", module_json(t.purified)}, {"pruned", module_json(prune(t.purified).module)}};
  }
  if (cmd == "close") {
    const auto& A = s.get<SupportsBinding>(o.supports, "supports");
    const auto& M = s.get<ModuleBinding>(o.module, "module");
    Closure c = closure(M.module, A.supports, o.max_steps);
    json smap = json::array();
    for (const auto& col : c.structure_map.columns) smap.push_back(polys(col));
    return json{{"module", module_json(c.module)}, {"structure_map", smap}, {"steps", c.steps},
                {"torsion_free", c.torsion_free}, {"iso", c.is_iso()},
                {"regular", opt_poly(c.regular)}};
  }
  if (cmd == "deep") {
    const auto& A = s.get<SupportsBinding>(o.supports, "supports");
    const auto& M = s.get<ModuleBinding>(o.module, "module");
    DeepReport d = deep_report(M.module, o.degree, A.supports);
    return json{{"deep", d.deep}, {"degree", o.degree}, {"failed_degree", d.failed_degree},
                {"failing_ideal", d.failing_ideal ? polys(d.failing_ideal->gens()) : json(nullptr)},
                {"witness", opt_vec(d.witness)}};
  }
  if (cmd == "cech") {
    const auto& A = s.get<SupportsBinding>(o.supports, "supports");
    const auto& M = s.get<ModuleBinding>(o.module, "module");
    CechResult c = cech_h(M.module, A.supports.product(), o.degree, o.max_steps);
    return json{{"degree", o.degree}, {"zero", c.is_zero}, {"witness", opt_vec(c.witness)},
                {"description", c.description}};
  }
  if (cmd == "philocal") {
    PhiLocalModel model = model_of(s, o);
    const Ring R = Ring::polynomial(model.ring);
    if (o.action == "check") {
      std::vector<Poly> samples;
      for (std::size_t i = 0; i < R.nvars(); ++i) samples.push_back(R.var(i));
      if (auto I = maybe_ideal(s, o.ideal))
        for (const auto& g : I->ideal.gens()) samples.push_back(g);
      StructureReport r = structure_check(model, samples);
      return json{{"checks", r.checks}, {"violations", r.violations}, {"ok", r.ok()}};
    }
    if (o.action == "push") {
      const auto& A = s.get<SupportsBinding>(o.supports, "supports");
      PushResult p = push_valuation(A.supports, model.valuation);
      return json{{"w0", p.w0.str()}, {"j", p.j}, {"p", polys(p.p.gens())},
                  {"R", p.R.str()}, {"c_holds", p.c_holds}};
    }
    if (o.action == "flat") {
      const auto& M = s.get<ModuleBinding>(o.module, "module");
      std::vector<Poly> s_gen;
      if (!o.ideal.empty()) s_gen = s.get<IdealBinding>(o.ideal, "ideal").ideal.gens();
      FlatVerdict v = flat_over_philocal(model, M.module, s_gen);
      return json{{"flat", v.flat}, {"reason", v.reason},
                  {"rank", v.rank ? json(*v.rank) : json(nullptr)},
                  {"fitting_witness", polys(v.fitting_witness)},
                  {"torsion_by", opt_poly(v.torsion_by)},
                  {"torsion_element", opt_vec(v.torsion_element)}, {"warnings", v.warnings}};
    }
    throw invalid("philocal needs one of check, push, flat");
  }
  if (cmd == "valuation") {
    const auto& vb = s.get<ValuationBinding>(o.valuation, "valuation");
    const Ring& R = ring_of(s, vb.ring);
    ValuativePoint pt = ValuativePoint::make(R, vb.valuation);
    if (o.action == "eval" || o.action == "chart") {
      const auto& I = s.get<IdealBinding>(o.ideal, "ideal");
      std::vector<Value> vals = values_of(vb.valuation, I.ideal.gens());
      json j{{"values", values_json(vals)}, {"generators", polys(I.ideal.gens())}};
      if (o.action == "chart") j["chart"] = select_chart(vals) + 1;
      return j;
    }
    if (o.action == "trace") {
      const auto& A = s.get<SupportsBinding>(o.supports, "supports");
      std::vector<std::vector<std::string>> centers;
      for (const auto& c : o.centers) centers.push_back(split_commas(c));
      json steps = json::array();
      for (const auto& st : trace_through_blowups(pt, A.supports, centers))
        steps.push_back(json{{"chart", st.chart + 1},
                             {"vars", st.ring.poly()->vars()},
                             {"values", values_json(st.values)},
                             {"exceptional", st.exceptional.str()}});
      return json{{"admissible", point_is_admissible(pt, A.supports)}, {"steps", steps}};
    }
    throw invalid("valuation needs one of eval, chart, trace");
  }
  if (cmd == "blowup") {
    const auto& I = s.get<IdealBinding>(o.ideal, "ideal");
    if (o.chart == 0) throw invalid("charts are numbered from 1");
    BlowUpChart c = rees_chart(I.ideal.ring(), I.ideal, o.chart - 1);
    if (o.action == "chart") return json{{"chart", o.chart}, {"result", chart_json(c)}};
    if (o.action == "strict") {
      const auto& M = s.get<ModuleBinding>(o.module, "module");
      auto st = strict_transform(M.module, c);
      return json{{"chart", o.chart}, {"result", chart_json(c)}, {"module", module_json(st.result)},
                  {"exponent", st.exponent}, {"pruned", module_json(prune(st.result).module)}};
    }
    throw invalid("blowup needs one of chart, strict");
  }
  if (cmd == "flatten") {
    const auto& A = s.get<SupportsBinding>(o.supports, "supports");
    const auto& M = s.get<ModuleBinding>(o.module, "module");
    FlatteningCertificate cert = flatten({A.supports, M.module, o.max_rounds}, o.threads);
    if (cert.verdict == FlattenVerdict::Unresolved) code = kExitUnresolved;
    if (cert.verdict == FlattenVerdict::InputNotFlatOnU) code = kExitNotFlatOnU;
    return certificate_json(cert);
  }
  throw invalid("unknown command " + cmd);
}

}  // namespace

Report run(const Session& session, const RunOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  Report r;
  json result = dispatch(session, opts, r.exit_code);
  r.json = json{{"command", opts.command},
                {"version", PHIFLAT_VERSION},
                {"input", print_session(session)},
                {"options", json{{"action", opts.action},
                                 {"supports", opts.supports},
                                 {"ideal", opts.ideal},
                                 {"module", opts.module},
                                 {"valuation", opts.valuation},
                                 {"max_rounds", opts.max_rounds},
                                 {"max_steps", opts.max_steps},
                                 {"degree", opts.degree},
                                 {"chart", opts.chart},
                                 {"split", opts.split},
                                 {"centers", opts.centers}}},
                {"result", std::move(result)}};
  if (opts.timing) {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
    r.json["timing_ms"] = ms.count();
  }
  return r;
}

Report run_verify(const json& input) {
  const json& cert = input.contains("result") ? input.at("result") : input;
  if (!cert.contains("problem")) throw invalid("input is not a flattening certificate");
  FlatteningProblem p = problem_from_json(cert.at("problem"));
  Verification v = verify_certificate(cert, p);
  Report r;
  r.json = json{{"command", "verify"},
                {"version", PHIFLAT_VERSION},
                {"result", json{{"valid", v.valid}, {"divergence", v.divergence}}}};
  r.exit_code = v.valid ? kExitOk : kExitInvalid;
  return r;
}

std::string report_text(const json& report) { return report.dump(2) + "\n"; }

void emit_report(const json& report, const std::string& path) {
  std::string text = report_text(report);
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::InvalidArgument, "write to " + path + " failed");
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InputNotFlatOnU: return kExitNotFlatOnU;
    case ErrorCode::Internal: return kExitInternal;
    default: return kExitInvalid;
  }
}

}  // namespace phiflat
