#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spec.hpp"

namespace canonica::cli {

enum ExitCode : int {
  kPass = 0,
  kMismatch = 1,
  kSchemaError = 2,
  kParameterViolation = 3,
  kPartial = 4,
  kInapplicable = 5,
};

struct Options {
  std::string command;  // build | classify | verify
  std::vector<std::string> spec;
  std::optional<int> scan;
  std::optional<int> ext_bound;
  std::string json_path;
  int threads = 1;
  bool verify_gb = false;
  std::optional<std::uint32_t> field_p;
  std::string suite;
};

struct Outcome {
  int exit_code = kPass;
  /// Report envelope without the wall-time field; null when the command failed early.
  nlohmann::json report;
};

/// Runs one command, printing the human-readable summary to `out` and
/// diagnostics to `err`.
Outcome run_command(const Options& opt, std::ostream& out, std::ostream& err);

constexpr int kSchemaVersion = 1;
constexpr const char* kToolVersion = "0.1.0";

}  // namespace canonica::cli
