#ifndef SPINSIM_CLI_HPP_
#define SPINSIM_CLI_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinsim/harness.hpp"
#include "spinsim/serialize.hpp"

namespace spinsim::cli {

enum class Command { Exact, Matrix, Sample, Sweep, Chsh, KsTest };

const char* to_string(Command c);

struct RunConfig {
  Command command = Command::Exact;
  Mode mode = Mode::Single;
  /// Radians, already converted when --degrees was given.
  std::vector<double> angles;
  std::size_t n = 100000;
  std::uint64_t seed = 42;
  Format format = Format::Json;
  std::optional<std::string> output_path;
  Engine engine = Engine::Exact;
  std::size_t grid_size = 50;
  bool shared_stream = false;
  unsigned workers = 1;
};

/// Bad command line. The message names the offending flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help was given; what() holds the help text.
class HelpRequested : public UsageError {
 public:
  using UsageError::UsageError;
};

inline constexpr const char* kSeedEnvVar = "SPIN_SIM_SEED";

/// Parses arguments (without the program name). The seed falls back to the
/// SPIN_SIM_SEED environment variable, then to 42.
RunConfig parse_args(const std::vector<std::string>& args);

/// Runs the configured command and returns the serialized result.
/// Throws std::invalid_argument on precondition violations.
std::string execute(const RunConfig& config);

/// Full front end: parse, execute, write to --output or out. Returns the
/// process exit code (0 ok, 2 usage error, 1 runtime failure).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinsim::cli

#endif  // SPINSIM_CLI_HPP_
