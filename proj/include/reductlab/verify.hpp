#pragma once

// Verification runs behind the reduct-lab command line. A run is a pure
// function of its configuration: the same config and seed give the same
// report, byte for byte (timing is only recorded when asked for).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace reductlab {

enum class Command { PreservationMatrix, RmTable, ChainWitness, ClosureOrder, Realize, DegreeCheck };
enum class Format { Json, Csv };
enum class Method { Structured, BruteForce };

std::string to_string(Command c);
Command parse_command(const std::string& name);

struct IntRange {
  int lo = 0;
  int hi = -1;
  bool contains(int x) const { return lo <= x && x <= hi; }
};
/// "3" or "1..4".
IntRange parse_range(const std::string& text);

/// Rejected configurations; the CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Command command = Command::PreservationMatrix;
  int d = 5;
  int q = 2;
  std::optional<IntRange> n_range;
  std::optional<IntRange> m_range;
  std::optional<IntRange> r_range;
  std::uint64_t seed = 1;
  Format format = Format::Json;
  std::uint64_t budget = std::uint64_t{1} << 24;
  Method method = Method::Structured;
  /// Flip-set words for `realize`, one per entry.
  std::vector<std::string> flips;
  /// Random functions per k for degree-check above n = 4.
  int samples = 10000;
  bool timing = false;
};

struct Report {
  nlohmann::ordered_json config;
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  bool pass = false;
  std::optional<double> seconds;
};

/// Throws ConfigError on an invalid configuration and lets ResourceError
/// through when an enumeration exceeds the budget.
Report run(const RunConfig& config);

std::string to_json(const Report& report);
std::string to_csv(const Report& report);

}  // namespace reductlab
