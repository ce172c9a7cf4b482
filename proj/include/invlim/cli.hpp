#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "invlim/inverse_system.hpp"

namespace invlim::cli {

// Process exit codes. Counterexamples are findings, not failures: a sweep
// that finds some still exits with kOk.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kParse = 3,
  kValidation = 4,
  kDimension = 5,
  kPoint = 6,
  kOrder = 7,
  kResource = 8,
  kIo = 9,
  kInternal = 10,
};

struct RunConfig {
  std::string subcommand;  // partitions | delta | limit | conjecture
  std::optional<std::size_t> n;
  std::optional<std::string> map;
  std::optional<std::size_t> point;
  std::optional<std::string> partition;
  Semantics semantics = Semantics::standard;
  std::string family = "full";  // "full" or "file:PATH"
  std::optional<std::uint64_t> sample;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::size_t workers = 1;
  bool force = false;
  bool explain = false;
  bool timing = false;

  // Canonical argument vector (without program name) that parses back to
  // an equal config.
  std::vector<std::string> to_args() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Throws UsageError on anything CLI11 rejects.
RunConfig parse_args(const std::vector<std::string>& args);

// Parses and runs; never throws. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

int execute(const RunConfig& config, std::ostream& out);

}  // namespace invlim::cli
