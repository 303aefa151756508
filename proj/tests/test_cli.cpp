#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "phiflat/cli.hpp"
#include "phiflat/error.hpp"

using namespace phiflat;

namespace {

const char* kFlagship = R"(
ring A = QQ[u,v];
supports S on A = (u,v);
module M = coker [[v],[-u]];
ideal I = (u);
)";

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

std::string parse_error(std::string_view text) {
  try {
    parse_session(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

RunOptions cmd(const char* c, const char* action = "") {
  RunOptions o;
  o.command = c;
  o.action = action;
  return o;
}

/// Runs the installed tool; returns its exit status.
int tool(const std::string& args, const std::string& out_path) {
  std::string line = std::string(PHIFLAT_TOOL) + " " + args + " > " + out_path + " 2>/dev/null";
  int rc = std::system(line.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp(const std::string& name, const std::string& content = "") {
  std::string path = "phiflat_cli_" + name;
  if (!content.empty()) std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("parse_session examples") {
  Session s = parse_session("ring A = QQ[u,v]; ideal I = (u,v);");
  CHECK(s.bindings.size() == 2);
  CHECK(s.get<IdealBinding>("I", "ideal").ring == "A");

  Session f = parse_session(kFlagship);
  const PresentedModule& M = f.get<ModuleBinding>("M", "module").module;
  CHECK(M.gens == 2);
  REQUIRE(M.relations.size() == 1);
  CHECK(M.relations[0][0].str() == "v");
  CHECK(M.relations[0][1].str() == "-u");

  std::string text = "ring A = QQ[u,v];\nideal I = (u,;";
  std::string err = parse_error(text);
  CHECK(err.find("offset " + std::to_string(text.find(';', 18))) != std::string::npos);
  CHECK(err.find("line 2") != std::string::npos);

  CHECK(code_of([] { parse_session("ideal I = (u);"); }) == ErrorCode::UnresolvedName);
  CHECK(code_of([] { parse_session("ring A = QQ[u]; supports S on B = (u);"); }) ==
        ErrorCode::UnresolvedName);
  CHECK(code_of([] { parse_session("ring A = QQ[u]; ring A = QQ[v];"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_session("ring A = QQ[u]; ideal I = (w);"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_session("ring A = QQ[u,v]; module M = coker [[u, v], [u]];"); }) ==
        ErrorCode::ParseError);

  Session q = parse_session(
      "ring A = QQ[u,v] / (u*v); ring B = QQ[x,y]; ideal J on A = (u + v); "
      "valuation V on B = [[1, inf], [0, inf]]; module F = coker [[], []]; # free of rank 2\n");
  CHECK(q.ring("A").is_quotient());
  CHECK(q.get<ModuleBinding>("F", "module").module.gens == 2);
  CHECK(q.get<ModuleBinding>("F", "module").ring == "B");
  const ValuationData& V = q.get<ValuationBinding>("V", "valuation").valuation;
  CHECK(V.rank() == 2);
  CHECK(V.is_infinite(1));
  CHECK_FALSE(V.is_infinite(0));
}

TEST_CASE("property: print then parse round-trips") {
  std::mt19937 rng(99);
  const std::vector<std::string> pool{"u", "v", "w", "x1", "y_2"};
  for (int trial = 0; trial < 40; ++trial) {
    std::ostringstream src;
    int nrings = 1 + trial % 2;
    for (int r = 0; r < nrings; ++r) {
      std::size_t n = 1 + rng() % 3;
      std::vector<std::string> vars(pool.begin(), pool.begin() + n);
      RingPtr P = make_poly_ring(vars);
      std::string name = "R" + std::to_string(r);
      src << "ring " << name << " = " << P->str();
      if (rng() % 3 == 0) src << " / (" << oracle::random_poly(P, rng, 2, 2).str() << ")";
      src << ";\n";
      auto poly = [&] {
        Poly p = oracle::random_poly(P, rng, 2, 3);
        if (rng() % 4 == 0) p = p.scaled(Rational(1, 3));
        return p.is_zero() ? Poly::variable(P, 0) : p;
      };
      src << "supports S" << r << " on " << name << " = (" << poly().str() << "), ("
          << poly().str() << ", " << poly().str() << ");\n";
      src << "ideal I" << r << " = (" << poly().str() << ", " << poly().str() << ");\n";
      std::size_t g = rng() % 3, s = rng() % 3;
      src << "module M" << r << " = coker [";
      for (std::size_t i = 0; i < g; ++i) {
        src << (i ? ", [" : "[");
        for (std::size_t j = 0; j < s; ++j) src << (j ? ", " : "") << poly().str();
        src << "]";
      }
      src << "];\n";
      src << "valuation V" << r << " on " << name << " = [[";
      bool inf_col = rng() % 2;
      for (std::size_t k = 0; k < n; ++k)
        src << (k ? ", " : "") << (inf_col && k == n - 1 ? std::string("inf") : std::to_string(rng() % 4));
      src << "]];\n";
    }
    ParseOptions opts;
    opts.degenerate_ok = true;
    Session s = parse_session(src.str(), opts);
    std::string printed = print_session(s);
    Session back = parse_session(printed, opts);
    CHECK(back == s);
    CHECK(print_session(back) == printed);
  }
  // an ideal placed on an earlier ring keeps its `on` clause
  Session s = parse_session("ring A = QQ[u]; ring B = QQ[v]; ideal I on A = (u);");
  CHECK(print_session(s).find("ideal I on A") != std::string::npos);
  CHECK(parse_session(print_session(s)) == s);
}

TEST_CASE("run examples") {
  Session s = parse_session(kFlagship);
  Report f = run(s, cmd("flatten"));
  CHECK(f.exit_code == kExitOk);
  CHECK(f.json["result"]["verdict"] == "Success");
  CHECK(f.json["result"]["rounds"] == 1);

  Report a = run(s, cmd("admissible"));
  CHECK(a.json["result"]["admissible"] == false);

  Report v = run_verify(f.json);
  CHECK(v.exit_code == kExitOk);
  CHECK(v.json["result"]["valid"] == true);
  CHECK(run_verify(f.json["result"]).json["result"]["valid"] == true);

  nlohmann::json tampered = f.json;
  tampered["result"]["root"]["charts"][0]["module"]["relations"][0][0] = "t2 + 1";
  CHECK(run_verify(tampered).json["result"]["valid"] == false);

  Session bad = parse_session("ring A = QQ[u,v]; supports S on A = (u); module M = coker [[v]];");
  Report b = run(bad, cmd("flatten"));
  CHECK(b.exit_code == kExitNotFlatOnU);
  CHECK(b.json["result"]["offending"]["locus"] == nlohmann::json{"v"});
  CHECK(b.json["result"]["offending"]["witness"] == "u");

  RunOptions zero = cmd("flatten");
  zero.max_rounds = 0;
  CHECK(run(s, zero).exit_code == kExitUnresolved);

  RunOptions deep = cmd("deep");
  deep.degree = 2;
  CHECK(run(s, deep).json["result"]["deep"] == false);
  Report st = run(parse_session(std::string(kFlagship) + "ideal C = (u, v);"), [] {
    RunOptions o = cmd("blowup", "strict");
    o.chart = 2;
    return o;
  }());
  CHECK(st.json["result"]["pruned"]["gens"] == 1);
  CHECK(st.json["result"]["result"]["structure"] == nlohmann::json{"v*t1", "v"});

  Session val = parse_session(std::string(kFlagship) + "valuation V on A = [[1, 2]]; ideal C = (u, v);");
  RunOptions tr = cmd("valuation", "trace");
  tr.centers = {"u,v", "u,t2"};
  Report t = run(val, tr);
  CHECK(t.json["result"]["steps"][1]["values"] == nlohmann::json{"(1)", "(0)"});
  CHECK(run(val, cmd("valuation", "chart")).json["result"]["chart"] == 1);

  CHECK(code_of([&] { run(s, cmd("nonsense")); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] {
          RunOptions o = cmd("admissible");
          o.ideal = "missing";
          run(s, o);
        }) == ErrorCode::UnresolvedName);
}

TEST_CASE("reports are byte-identical across runs") {
  Session s = parse_session(kFlagship);
  for (const char* c : {"flatten", "purify", "admissible", "groebner"}) {
    std::string a = report_text(run(s, cmd(c)).json);
    std::string b = report_text(run(parse_session(kFlagship), cmd(c)).json);
    CHECK(a == b);
  }
}

TEST_CASE("tool exit codes and certificate round trip") {
  std::string in = temp("flag.phi", kFlagship);
  std::string cert = temp("cert.json"), cert2 = temp("cert2.json"), ver = temp("verify.json");
  CHECK(tool("flatten --input " + in + " --out " + cert, "/dev/null") == 0);
  CHECK(tool("flatten --input " + in + " --out " + cert2, "/dev/null") == 0);
  CHECK(slurp(cert) == slurp(cert2));
  CHECK(tool("verify --input " + cert, ver) == 0);
  CHECK(nlohmann::json::parse(slurp(ver))["result"]["valid"] == true);

  CHECK(tool("flatten --max-rounds 0 --input " + in, "/dev/null") == 2);
  std::string bad = temp("bad.phi", "ring A = QQ[u,v]; supports S on A = (u); module M = coker [[v]];");
  CHECK(tool("flatten --input " + bad, "/dev/null") == 3);
  std::string broken = temp("broken.phi", "ring A = QQ[u,v];\nideal I = (u,;");
  CHECK(tool("groebner --input " + broken, "/dev/null") == 4);
  CHECK(tool("deep --degree 7 --input " + in, "/dev/null") == 4);
  for (const auto& p : {in, cert, cert2, ver, bad, broken}) std::remove(p.c_str());
}
