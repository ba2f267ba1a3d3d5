#pragma once

#include <ostream>
#include <string>

#include "config.hpp"

namespace cfin::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kIoError = 2, kDiverged = 3 };

struct CommandOptions {
  bool plot = false;
  /// Overrides output.csv when non-empty.
  std::string output;
};

int run_simulate(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log);
int run_lyapunov(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log);
/// Spectrum or bifurcation scan, per scan.kind.
int run_scan(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log);
int run_attractor(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log);

}  // namespace cfin::cli
