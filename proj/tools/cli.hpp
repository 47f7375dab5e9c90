// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace krein::cli {

/// Process exit codes shared by every subcommand.
enum exit_code : int { ok = 0, math_failure = 1, input_error = 2 };

struct SpectrumOptions {
  double z_min = -10.0;
  double z_max = -1e-2;
  int grid = 400;
  double tol = 1e-10;
  double threshold = 0.0;  // 0 selects the automatic threshold
  unsigned threads = 0;    // 0 means hardware concurrency
  std::string out = "-";
};

struct GreenOptions {
  std::string z;
  std::string points;
  std::string out = "-";
};

struct CheckOptions {
  int samples = 50;
  std::uint64_t seed = 1;
  bool bypass_validation = false;
};

struct RelationOptions {
  std::string op;
  bool bypass_validation = false;
};

// Each command writes its report to `out` (or the file named in its
// options) and diagnostics to `err`, then returns an exit code.
int cmd_validate(const std::string& config, std::ostream& out, std::ostream& err);
int cmd_spectrum(const std::string& config, const SpectrumOptions& opts, std::ostream& out, std::ostream& err);
int cmd_green(const std::string& config, const GreenOptions& opts, std::ostream& out, std::ostream& err);
int cmd_check(const std::string& config, const CheckOptions& opts, std::ostream& out, std::ostream& err);
int cmd_relation(const std::string& config, const RelationOptions& opts, std::ostream& out, std::ostream& err);

/// Reads KREIN_BC_THREADS. Unset yields 0 (auto); garbage yields nullopt.
std::optional<unsigned> threads_from_env();

/// Full argument parsing and dispatch; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace krein::cli
