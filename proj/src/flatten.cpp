#include "phiflat/flatten.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>

#include "phiflat/error.hpp"

namespace phiflat {

using nlohmann::json;

std::size_t generic_rank(const PresentedModule& M) {
  if (!M.ring.known_domain())
    throw Error(ErrorCode::NotADomain, M.ring.str() + " is not known to be a domain");
  for (std::size_t i = 0; i < M.gens; ++i)
    if (!fitting_ideal(M, i).is_zero()) return i;
  return M.gens;
}

FlatnessTest is_flat_finite(const PresentedModule& M) {
  FlatnessTest t;
  t.rank = generic_rank(M);
  t.locus = fitting_ideal(M, t.rank);
  t.flat = t.locus.is_unit();
  return t;
}

std::string verdict_name(FlattenVerdict v) {
  switch (v) {
    case FlattenVerdict::Success: return "Success";
    case FlattenVerdict::Unresolved: return "Unresolved";
    case FlattenVerdict::InputNotFlatOnU: return "InputNotFlatOnU";
  }
  return "?";
}

namespace {

unsigned thread_count(unsigned requested) {
  if (requested) return requested;
  if (const char* env = std::getenv("PHIFLAT_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(0..n-1); results must be written to per-index slots.  The first
/// exception by index is rethrown.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto work = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(threads, n); ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

ChartNode root_node(const FlatteningProblem& p) {
  require_same_ring(p.base.base(), p.module.ring, "flatten");
  ChartNode n;
  n.sequence = BlowUpSequence{p.base, {}};
  n.module = p.module;
  n.test = is_flat_finite(n.module);
  return n;
}

ChartNode expand(const ChartNode& parent, const Ideal& center, std::size_t index) {
  ChartNode n;
  n.path = parent.path;
  n.path.push_back(index);
  n.sequence = compose(parent.sequence, center, index);
  auto st = strict_transform(parent.module, n.sequence.stages.back().chart);
  n.module = std::move(st.result);
  n.saturation_exponent = st.exponent;
  n.test = is_flat_finite(n.module);
  return n;
}

std::vector<std::string> strings(const std::vector<Poly>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.str());
  return out;
}

MonomialOrder order_from_name(const std::string& s) {
  if (s == "grevlex") return MonomialOrder::grevlex();
  if (s == "lex") return MonomialOrder::lex();
  throw Error(ErrorCode::InvalidArgument, "unknown monomial order " + s);
}

/// Everything recorded for a node except its blow-up and children.
json node_fields(const ChartNode& n) {
  json j;
  j["path"] = n.path;
  j["ring"] = ring_json(n.ring());
  j["supports"] = strings(n.supports().product().gens());
  j["module"] = module_json(n.module);
  j["saturation_exponent"] = n.saturation_exponent;
  j["rank"] = n.test.rank;
  j["locus"] = strings(n.test.locus.reduced_gens());
  j["flat"] = n.test.flat;
  if (!n.sequence.stages.empty()) {
    const BlowUpChart& c = n.sequence.stages.back().chart;
    j["chart_index"] = c.index;
    j["exceptional"] = c.exceptional.str();
    j["structure"] = strings(c.structure.images);
  }
  return j;
}

json node_json(const ChartNode& n) {
  json j = node_fields(n);
  if (n.center) {
    j["center"] = strings(n.center->gens());
    j["center_exponent"] = n.center_exponent;
    json charts = json::array();
    for (const auto& c : n.children) charts.push_back(node_json(c));
    j["charts"] = std::move(charts);
  }
  return j;
}

std::string path_str(const std::vector<std::size_t>& path) {
  std::string s = "[";
  for (std::size_t i = 0; i < path.size(); ++i) s += (i ? "," : "") + std::to_string(path[i]);
  return s + "]";
}

}  // namespace

json ring_json(const Ring& R) {
  std::vector<Poly> rels;
  if (R.is_quotient()) rels = Ideal(Ring::polynomial(R.poly()), R.relations()).reduced_gens();
  return json{{"vars", R.poly()->vars()},
              {"order", R.poly()->order().name()},
              {"relations", strings(rels)},
              {"domain", R.known_domain()}};
}

Ring ring_from_json(const json& j) {
  RingPtr P = make_poly_ring(j.at("vars").get<std::vector<std::string>>(),
                             order_from_name(j.at("order").get<std::string>()));
  std::vector<Poly> rels;
  for (const auto& s : j.at("relations")) rels.push_back(parse_poly(P, s.get<std::string>()));
  if (rels.empty()) return Ring::polynomial(P);
  return Ring(P, rels, j.at("domain").get<bool>());
}

json module_json(const PresentedModule& M) {
  json rels = json::array();
  for (const auto& col : M.relations) rels.push_back(strings(col));
  return json{{"gens", M.gens}, {"relations", std::move(rels)}};
}

PresentedModule module_from_json(const Ring& R, const json& j) {
  PresentedModule M{R, j.at("gens").get<std::size_t>(), {}};
  for (const auto& col : j.at("relations")) {
    if (col.size() != M.gens)
      throw Error(ErrorCode::InvalidArgument, "relation column has the wrong length");
    Vec v;
    for (const auto& s : col) v.push_back(R.parse(s.get<std::string>()));
    M.relations.push_back(std::move(v));
  }
  return M;
}

json problem_json(const FlatteningProblem& p) {
  json fam = json::array();
  for (const auto& I : p.base.phi0()) fam.push_back(strings(I.gens()));
  return json{{"ring", ring_json(p.base.base())},
              {"supports", std::move(fam)},
              {"degenerate_ok", p.base.degenerate_ok()},
              {"module", module_json(p.module)},
              {"max_rounds", p.max_rounds}};
}

FlatteningProblem problem_from_json(const json& j) {
  Ring R = ring_from_json(j.at("ring"));
  std::vector<Ideal> fam;
  for (const auto& gens : j.at("supports")) {
    std::vector<Poly> ps;
    for (const auto& s : gens) ps.push_back(R.parse(s.get<std::string>()));
    fam.emplace_back(R, std::move(ps));
  }
  return FlatteningProblem{make_phi_ring(R, fam, j.at("degenerate_ok").get<bool>()),
                           module_from_json(R, j.at("module")),
                           j.at("max_rounds").get<unsigned>()};
}

FlatteningCertificate flatten(const FlatteningProblem& problem, unsigned threads) {
  threads = thread_count(threads);
  FlatteningCertificate cert;
  cert.problem = problem;
  cert.root = root_node(problem);

  std::vector<ChartNode*> frontier{&cert.root};
  for (unsigned round = 0;; ++round) {
    std::vector<ChartNode*> open;
    for (ChartNode* n : frontier)
      if (!n->test.flat) open.push_back(n);
    if (open.empty()) {
      cert.verdict = FlattenVerdict::Success;
      return cert;
    }
    // A non-flat locus meeting U means the input was not flat there.
    for (ChartNode* n : open) {
      Admissibility adm = is_admissible(n->supports(), n->test.locus);
      if (adm.admissible) continue;
      cert.verdict = FlattenVerdict::InputNotFlatOnU;
      cert.offending = n->test.locus;
      cert.offending_path = n->path;
      cert.witness = adm.witness;
      return cert;
    }
    if (round == problem.max_rounds) {
      cert.verdict = FlattenVerdict::Unresolved;
      return cert;
    }

    struct Task {
      ChartNode* parent;
      std::size_t index;
    };
    std::vector<Task> tasks;
    for (ChartNode* n : open) {
      // The first blow-up makes the support product invertible.
      Ideal C = round == 0 ? n->supports().product()
                           : Ideal(n->ring(), n->test.locus.reduced_gens());
      n->center = C;
      n->center_exponent = is_admissible(n->supports(), C).exponent.value_or(0);
      n->children.resize(C.gens().size());
      for (std::size_t i = 0; i < C.gens().size(); ++i) tasks.push_back({n, i});
    }
    parallel_for(tasks.size(), threads, [&](std::size_t t) {
      const Task& task = tasks[t];
      task.parent->children[task.index] = expand(*task.parent, *task.parent->center, task.index);
    });

    frontier.clear();
    for (ChartNode* n : open)
      for (auto& c : n->children) frontier.push_back(&c);
    cert.rounds = round + 1;
  }
}

json certificate_json(const FlatteningCertificate& cert) {
  json j;
  j["format"] = "phiflat-certificate";
  j["version"] = PHIFLAT_VERSION;
  j["verdict"] = verdict_name(cert.verdict);
  j["rounds"] = cert.rounds;
  j["problem"] = problem_json(cert.problem);
  j["root"] = node_json(cert.root);
  if (cert.offending) {
    j["offending"] = json{{"locus", strings(cert.offending->gens())},
                          {"path", cert.offending_path},
                          {"witness", cert.witness ? cert.witness->str() : ""}};
  }
  return j;
}

namespace {

struct Replay {
  std::string divergence;
  unsigned depth = 0;
  bool all_leaves_flat = true;
  const json* offending_node = nullptr;

  bool fail(const std::vector<std::size_t>& path, const std::string& what) {
    if (divergence.empty()) divergence = "chart " + path_str(path) + ": " + what;
    return false;
  }

  bool node(const json& recorded, const ChartNode& n) {
    json expected = node_fields(n);
    for (const auto& [key, value] : expected.items()) {
      if (!recorded.contains(key)) return fail(n.path, "missing field " + key);
      if (recorded.at(key) != value) return fail(n.path, key + " does not replay");
    }
    depth = std::max<unsigned>(depth, n.path.size());
    if (!recorded.contains("center")) {
      all_leaves_flat = all_leaves_flat && n.test.flat;
      return true;
    }
    if (n.test.flat) return fail(n.path, "a flat chart was blown up");

    std::vector<Poly> gens;
    for (const auto& s : recorded.at("center")) gens.push_back(n.ring().parse(s.get<std::string>()));
    Ideal C(n.ring(), gens);
    Admissibility adm = is_admissible(n.supports(), C);
    if (!adm.admissible) return fail(n.path, "center " + C.str() + " is not admissible");
    unsigned N = recorded.at("center_exponent").get<unsigned>();
    if (adm.exponent.value_or(0) != N || !power_contained(n.supports().product(), N, C))
      return fail(n.path, "admissibility exponent does not replay");

    const json& charts = recorded.at("charts");
    if (charts.size() != gens.size()) return fail(n.path, "chart count does not match the center");
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (!node(charts[i], expand(n, C, i))) return false;
    return true;
  }
};

}  // namespace

Verification verify_certificate(const json& cert, const FlatteningProblem& problem) {
  Verification v;
  try {
    if (cert.at("problem") != problem_json(problem)) {
      v.divergence = "embedded problem differs";
      return v;
    }
    Replay r;
    if (!r.node(cert.at("root"), root_node(problem))) {
      v.divergence = r.divergence;
      return v;
    }
    if (cert.at("rounds").get<unsigned>() != r.depth) {
      v.divergence = "round count does not replay";
      return v;
    }
    std::string verdict = cert.at("verdict").get<std::string>();
    if (verdict == "Success" && !r.all_leaves_flat) {
      v.divergence = "Success recorded but a leaf chart is not flat";
      return v;
    }
    if (verdict == "Unresolved" && (r.all_leaves_flat || r.depth != problem.max_rounds)) {
      v.divergence = "Unresolved recorded but the replay disagrees";
      return v;
    }
    if (verdict == "InputNotFlatOnU") {
      // Replay the offending chart and confirm its locus is not admissible.
      ChartNode n = root_node(problem);
      const json* at = &cert.at("root");
      for (auto idx : cert.at("offending").at("path")) {
        std::size_t i = idx.get<std::size_t>();
        std::vector<Poly> gens;
        for (const auto& s : at->at("center")) gens.push_back(n.ring().parse(s.get<std::string>()));
        n = expand(n, Ideal(n.ring(), gens), i);
        at = &at->at("charts").at(i);
      }
      if (is_admissible(n.supports(), n.test.locus).admissible) {
        v.divergence = "offending locus is admissible";
        return v;
      }
    } else if (verdict != "Success" && verdict != "Unresolved") {
      v.divergence = "unknown verdict " + verdict;
      return v;
    }
  } catch (const Error& e) {
    v.divergence = std::string("replay failed: ") + e.what();
    return v;
  } catch (const json::exception& e) {
    v.divergence = std::string("malformed certificate: ") + e.what();
    return v;
  }
  v.valid = true;
  return v;
}

}  // namespace phiflat
