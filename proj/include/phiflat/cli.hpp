#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "phiflat/depth.hpp"
#include "phiflat/flatten.hpp"
#include "phiflat/session.hpp"

namespace phiflat {

/// Exit codes shared by the tool and its tests.
enum ExitCode : int {
  kExitOk = 0,
  kExitUnresolved = 2,
  kExitNotFlatOnU = 3,
  kExitInvalid = 4,
  kExitInternal = 5,
};

/// Binding names default to the last binding of the right kind.
struct RunOptions {
  std::string command;
  /// philocal check|push|flat, valuation eval|chart|trace, blowup chart|strict.
  std::string action;
  std::string supports, ideal, module, valuation;
  unsigned max_rounds = kDefaultMaxRounds;
  unsigned max_steps = kDefaultClosureSteps;
  unsigned degree = 1;
  /// 1-based chart index for blowup.
  std::size_t chart = 1;
  /// 1-based split index for philocal models; 0 uses the rank.
  std::size_t split = 0;
  /// Centers for valuation trace, each a comma-separated generator list.
  std::vector<std::string> centers;
  unsigned threads = 0;
  bool timing = false;
};

struct Report {
  nlohmann::json json;
  int exit_code = kExitOk;
};

/// Dispatches one command.  Library errors propagate as phiflat::Error.
Report run(const Session& session, const RunOptions& opts);

/// `verify`: accepts a bare certificate or a flatten report.
Report run_verify(const nlohmann::json& input);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string report_text(const nlohmann::json& report);
/// "-" writes to stdout.
void emit_report(const nlohmann::json& report, const std::string& path);

int exit_code_for(const Error& e);

}  // namespace phiflat
