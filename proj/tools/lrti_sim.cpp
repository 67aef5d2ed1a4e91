// Command-line driver for the long-range transverse Ising simulations.

#include <CLI11.hpp>
#include <iostream>
#include <map>

#include "lrti/cli/commands.hpp"
#include "lrti/error.hpp"

namespace {

using lrti::cli::EntropyBase;
using lrti::cli::OutputFormat;
using lrti::cli::RunConfig;

void add_options(CLI::App& sub, RunConfig& c, bool lists) {
  sub.add_option("--theta-pi", c.theta_pi, "theta in units of pi (0.05 means pi/20)")
      ->capture_default_str();
  if (lists) {
    sub.add_option("--alpha", c.alphas, "power-law exponents")->capture_default_str();
    sub.add_option("--length", c.lengths, "chain lengths")->capture_default_str();
  } else {
    sub.add_option("--alpha", c.alphas, "power-law exponent")
        ->expected(1)
        ->capture_default_str();
    sub.add_option("--length", c.lengths, "chain length")->expected(1)->capture_default_str();
  }
  sub.add_option("--tmax", c.t_max, "final time")->capture_default_str();
  sub.add_option("--dt", c.dt, "integration step")->capture_default_str();
  sub.add_option("--sample-dt", c.sample_dt, "output sampling interval")->capture_default_str();
  sub.add_option("--quench-site", c.quench_site, "quenched site, 1-indexed (default: center)");
  sub.add_option("--integrator", c.integrator, "euler or rk4")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, lrti::Integrator>{{"euler", lrti::Integrator::euler},
                                                  {"rk4", lrti::Integrator::rk4}},
          CLI::ignore_case));
  sub.add_option("--out", c.out, "output path stem")->capture_default_str();
  sub.add_option("--format", c.format, "csv or json")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OutputFormat>{{"csv", OutputFormat::csv},
                                              {"json", OutputFormat::json}},
          CLI::ignore_case));
  sub.add_option("--entropy-base", c.entropy_base, "nats or bits")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, EntropyBase>{{"nats", EntropyBase::nats},
                                             {"bits", EntropyBase::bits}},
          CLI::ignore_case));
  sub.add_option("--t0", c.t0, "reference time for the fast-mode count")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local-quench dynamics of the long-range transverse Ising chain"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lrti::cli::version()));

  std::map<std::string, RunConfig> configs;
  auto make = [&](const std::string& name, const std::string& help, bool lists,
                  auto&& defaults) {
    RunConfig& c = configs[name];
    c.subcommand = name;
    defaults(c);
    add_options(*app.add_subcommand(name, help), c, lists);
  };
  make("dispersion", "spin-wave dispersion and group velocities", false, [](RunConfig&) {});
  make("regimes", "maximal group velocity against chain length", true, [](RunConfig& c) {
    c.alphas = {0.5, 1.5, 3.0};
    c.lengths = {256, 512, 1024, 2048, 4096};
  });
  make("quench-swt", "spin-wave quench dynamics", false, [](RunConfig&) {});
  make("quench-ed", "exact quench dynamics and entanglement", false, [](RunConfig& c) {
    c.theta_pi = 0.2;
    c.lengths = {12};
    c.t_max = 8.0;
  });
  make("reproducing", "reproducing-kernel sums for power-law decay", true, [](RunConfig& c) {
    c.alphas = {0.5, 1.0, 1.5};
    c.lengths = {100, 200, 400, 800};
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const RunConfig& config = configs.at(app.get_subcommands().front()->get_name());
  try {
    const auto result = lrti::cli::run_command(config);
    for (const auto& w : result.warnings) std::cerr << w << '\n';
    for (const auto& f : result.files) std::cout << f.string() << '\n';
  } catch (const lrti::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const lrti::Error& e) {
    std::cerr << "error [" << lrti::to_string(e.kind()) << "]: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
