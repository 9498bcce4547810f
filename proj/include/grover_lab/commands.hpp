#pragma once

// Subcommands of the grover-lab CLI. Each returns the process exit code;
// run_command additionally maps exceptions to exit codes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace grover_lab {

enum class Engine { analytic, dense };

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kViolation = 1;
inline constexpr int kUsage = 2;
inline constexpr int kIo = 3;
}  // namespace exit_code

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;               // simulate, analytic, verify, drift, bounds, curve
  std::size_t n = 16;
  std::optional<std::size_t> k;      // step horizon; default optimal_iterations(n)
  std::optional<double> t_max;       // curve horizon; default two periods
  double dt = 1.0;
  std::size_t grid = 64;
  std::uint64_t seed = 20240101;
  Engine engine = Engine::analytic;
  std::string output_path;           // empty: CSV goes to the summary stream
  std::optional<double> pe;          // bounds: evaluate formulas at this P_e only
};

/// Throws UsageError when a field breaks the RunConfig invariants.
void validate(const RunConfig& config);

Engine parse_engine(const std::string& name);

int cmd_simulate(const RunConfig& config, std::ostream& out);
int cmd_analytic(const RunConfig& config, std::ostream& out);
int cmd_curve(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);
int cmd_drift(const RunConfig& config, std::ostream& out);
int cmd_bounds(const RunConfig& config, std::ostream& out);

/// Validates, dispatches on config.command and converts errors to exit
/// codes, writing the message to err.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace grover_lab
