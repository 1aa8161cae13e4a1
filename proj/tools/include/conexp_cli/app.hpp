#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "conexp_cli/run_config.hpp"

namespace conexp::cli {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kConfigError = 2, kNumericalFailure = 3 };

struct RunOptions {
  int threads = 0;  // 0: all cores
  std::ostream* log = nullptr;
};

// Executes the configured tasks and writes <output>.<task>.csv / .json.
int run(const RunConfig& config, const RunOptions& options);

// Acceptance suite at the configured resolution; writes <output>.verify.csv / .json.
int verify(const RunConfig& config, const RunOptions& options);

// Exponents over a parameter range; writes <output>.sweep.csv / .json.
int sweep(const RunConfig& config, const std::string& param, double from, double to, int steps,
          const RunOptions& options);

int show_cache(const std::string& path, std::ostream& out);

// Command line entry point (subcommands run, verify, sweep, show-cache).
int main_entry(int argc, char** argv);

}  // namespace conexp::cli
