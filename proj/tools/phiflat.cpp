#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "phiflat/cli.hpp"
#include "phiflat/error.hpp"

using namespace phiflat;

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void report_error(const std::string& code, const std::string& message) {
  nlohmann::json j{{"error", {{"code", code}, {"message", message}}}};
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "phiflat: exact commutative algebra with constructible supports.\n"
      "Module presentations are written as `coker [[row], ...]` with one row per\n"
      "generator and one column per relation."};
  app.require_subcommand(1);
  app.set_version_flag("--version", PHIFLAT_VERSION);

  RunOptions opts;
  std::string input = "-", out = "-", order = "grevlex";
  bool degenerate_ok = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", input, "session file (- for stdin)");
    sub->add_option("--out", out, "report path (- for stdout)");
    sub->add_option("--order", order, "monomial order")->check(CLI::IsMember({"grevlex", "lex"}));
    sub->add_flag("--degenerate-ok", degenerate_ok, "allow a zero support product");
    sub->add_option("--supports", opts.supports, "supports binding (default: last)");
    sub->add_option("--ideal", opts.ideal, "ideal binding (default: last)");
    sub->add_option("--module", opts.module, "module binding (default: last)");
    sub->add_option("--valuation", opts.valuation, "valuation binding (default: last)");
    sub->add_flag("--timing", opts.timing, "add wall-clock time to the report");
  };

  for (const char* name : {"groebner", "admissible", "purify"}) common(app.add_subcommand(name));
  auto* close = app.add_subcommand("close", "closure of a module");
  common(close);
  close->add_option("--max-steps", opts.max_steps, "colon-chain bound");
  auto* deep = app.add_subcommand("deep", "d-depth test for d = 1, 2");
  common(deep);
  deep->add_option("--degree", opts.degree)->check(CLI::Range(1, 2));
  auto* cech = app.add_subcommand("cech", "support cohomology in degree 0 or 1");
  common(cech);
  cech->add_option("--degree", opts.degree)->check(CLI::Range(0, 1));
  cech->add_option("--max-steps", opts.max_steps, "colon-chain bound");
  auto* philocal = app.add_subcommand("philocal", "local models: check, push, flat");
  common(philocal);
  philocal->add_option("action", opts.action)->required()->check(CLI::IsMember({"check", "push", "flat"}));
  philocal->add_option("--split", opts.split, "split index (default: rank)");
  auto* valuation = app.add_subcommand("valuation", "valuative points: eval, chart, trace");
  common(valuation);
  valuation->add_option("action", opts.action)->required()->check(CLI::IsMember({"eval", "chart", "trace"}));
  valuation->add_option("--center", opts.centers, "comma-separated center, repeatable");
  auto* blowup = app.add_subcommand("blowup", "blow-up charts: chart, strict");
  common(blowup);
  blowup->add_option("action", opts.action)->required()->check(CLI::IsMember({"chart", "strict"}));
  blowup->add_option("--chart", opts.chart, "1-based generator index");
  auto* flat = app.add_subcommand("flatten", "flattening by blow-ups");
  common(flat);
  flat->add_option("--max-rounds", opts.max_rounds);
  auto* verify = app.add_subcommand("verify", "replay a flattening certificate");
  verify->add_option("--input", input, "certificate or flatten report");
  verify->add_option("--out", out, "report path (- for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    opts.command = sub->get_name();
    std::string text = read_input(input);
    Report r;
    if (opts.command == "verify") {
      nlohmann::json cert;
      try {
        cert = nlohmann::json::parse(text);
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
      }
      r = run_verify(cert);
    } else {
      ParseOptions po;
      po.order = order == "lex" ? MonomialOrder::lex() : MonomialOrder::grevlex();
      po.degenerate_ok = degenerate_ok;
      r = run(parse_session(text, po), opts);
    }
    emit_report(r.json, out);
    return r.exit_code;
  } catch (const Error& e) {
    report_error(std::string(error_code_name(e.code())), e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    report_error("Internal", e.what());
    return kExitInternal;
  }
}
