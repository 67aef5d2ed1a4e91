#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lrti/gaussian_state.hpp"

namespace lrti::cli {

enum class OutputFormat { csv, json };
enum class EntropyBase { nats, bits };

/// Everything a run depends on; serialized verbatim into every sidecar.
struct RunConfig {
  std::string subcommand;
  double theta_pi = 0.05;  // theta in units of pi
  std::vector<double> alphas{3.0};
  std::vector<int> lengths{101};
  double t_max = 20.0;
  double dt = 0.002;
  double sample_dt = 0.1;
  std::optional<int> quench_site;  // 1-indexed
  Integrator integrator = Integrator::euler;
  std::string out = "lrti";
  OutputFormat format = OutputFormat::csv;
  EntropyBase entropy_base = EntropyBase::nats;
  double t0 = 50.0;
};

/// Bad flag values; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandResult {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> warnings;
};

/// Checks every flag against the subcommand before any computation.
void validate_config(const RunConfig& config);

nlohmann::json config_json(const RunConfig& config);

std::string_view version();

/// Validates, runs and writes outputs. Library failures propagate as
/// lrti::Error, flag problems as UsageError.
CommandResult run_command(const RunConfig& config);

CommandResult run_dispersion(const RunConfig& config);
CommandResult run_regimes(const RunConfig& config);
CommandResult run_quench_swt(const RunConfig& config);
CommandResult run_quench_ed(const RunConfig& config);
CommandResult run_reproducing(const RunConfig& config);

}  // namespace lrti::cli
