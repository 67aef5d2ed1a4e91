#include "lrti/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "lrti/cli/output.hpp"
#include "lrti/error.hpp"
#include "lrti/exact_diag.hpp"
#include "lrti/reproducing.hpp"
#include "lrti/spin_wave.hpp"

#ifndef LRTI_VERSION
#define LRTI_VERSION "0.0.0"
#endif

namespace lrti::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double pi = std::numbers::pi;

[[noreturn]] void usage(const std::string& msg) { throw UsageError(msg); }

double theta_of(const RunConfig& c) { return c.theta_pi * pi; }

double entropy_scale(const RunConfig& c) {
  return c.entropy_base == EntropyBase::bits ? 1.0 / std::numbers::ln2 : 1.0;
}

std::string_view to_string(Integrator i) { return i == Integrator::rk4 ? "rk4" : "euler"; }
std::string_view to_string(OutputFormat f) { return f == OutputFormat::json ? "json" : "csv"; }
std::string_view to_string(EntropyBase b) { return b == EntropyBase::bits ? "bits" : "nats"; }

ModelParams single_params(const RunConfig& c) {
  ModelParams p = ModelParams::make(theta_of(c), c.alphas.front(), c.lengths.front());
  if (c.quench_site) p.quench_site = *c.quench_site - 1;
  return p;
}

// Number of dt steps that make up `span`, requiring commensurability.
long step_count(double span, double dt, const char* what) {
  const double ratio = span / dt;
  const long n = std::lround(ratio);
  if (std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio))
    usage(std::string(what) + " must be an integer multiple of --dt");
  return n;
}

json base_sidecar(const RunConfig& c) {
  return {{"config", config_json(c)}, {"version", version()}};
}

// CSV: one data file per table plus `<out>.json`; JSON: everything in `<out>.json`.
CommandResult emit(const RunConfig& c, json sidecar,
                   const std::vector<std::pair<std::string, const CsvTable*>>& tables) {
  CommandResult result;
  const fs::path stem = c.out;
  if (c.format == OutputFormat::csv) {
    for (const auto& [suffix, table] : tables) {
      fs::path file = stem;
      file += suffix.empty() ? ".csv" : "_" + suffix + ".csv";
      write_atomic(file, table->str());
      result.files.push_back(file);
    }
  } else {
    json data = json::object();
    for (const auto& [suffix, table] : tables) data[suffix.empty() ? "data" : suffix] = table->json();
    sidecar["tables"] = std::move(data);
  }
  fs::path meta = stem;
  meta += ".json";
  write_atomic(meta, sidecar.dump(2) + "\n");
  result.files.push_back(meta);
  return result;
}

}  // namespace

std::string_view version() { return LRTI_VERSION; }

json config_json(const RunConfig& c) {
  json j = {
      {"subcommand", c.subcommand},
      {"theta_pi", c.theta_pi},
      {"theta", theta_of(c)},
      {"alpha", c.alphas},
      {"length", c.lengths},
      {"tmax", c.t_max},
      {"dt", c.dt},
      {"sample_dt", c.sample_dt},
      {"integrator", to_string(c.integrator)},
      {"out", c.out},
      {"format", to_string(c.format)},
      {"entropy_base", to_string(c.entropy_base)},
      {"t0", c.t0},
  };
  j["quench_site"] = c.quench_site ? json(*c.quench_site) : json(nullptr);
  return j;
}

void validate_config(const RunConfig& c) {
  static const std::vector<std::string> known = {"dispersion", "regimes", "quench-swt",
                                                 "quench-ed", "reproducing"};
  if (std::find(known.begin(), known.end(), c.subcommand) == known.end())
    usage("unknown subcommand '" + c.subcommand + "'");
  if (!std::isfinite(c.theta_pi)) usage("--theta-pi must be finite");
  if (c.alphas.empty()) usage("--alpha needs at least one value");
  if (c.lengths.empty()) usage("--length needs at least one value");
  if (c.out.empty()) usage("--out must not be empty");

  const bool single = c.subcommand == "dispersion" || c.subcommand == "quench-swt" ||
                      c.subcommand == "quench-ed";
  if (single && (c.alphas.size() != 1 || c.lengths.size() != 1))
    usage(c.subcommand + " takes exactly one --alpha and one --length");

  for (double a : c.alphas)
    for (int L : c.lengths) {
      if (c.subcommand == "reproducing") {
        if (!(a > 0.0)) usage("--alpha must be positive");
        continue;
      }
      ModelParams p = ModelParams::make(theta_of(c), a, L);
      if (c.quench_site) p.quench_site = *c.quench_site - 1;
      const auto v = validate(p);
      if (!v.empty()) {
        std::string msg = "invalid parameters:";
        for (auto e : v) msg += " " + std::string(to_string(e));
        usage(msg);
      }
    }

  if (c.subcommand == "regimes") {
    if (c.lengths.size() < 4) usage("regimes needs at least 4 lengths");
    if (!(c.t0 > 0.0)) usage("--t0 must be positive");
  }
  if (c.subcommand == "reproducing") {
    if (c.lengths.size() < 3) usage("reproducing needs at least 3 lengths");
    for (std::size_t i = 0; i < c.lengths.size(); ++i) {
      if (c.lengths[i] < 4 || c.lengths[i] % 2 != 0)
        usage("reproducing needs even lengths >= 4");
      if (i > 0 && c.lengths[i] <= c.lengths[i - 1]) usage("reproducing lengths must increase");
    }
  }
  if (c.subcommand == "quench-swt" || c.subcommand == "quench-ed") {
    if (!(c.t_max >= 0.0) || !std::isfinite(c.t_max)) usage("--tmax must be >= 0");
    if (!(c.sample_dt > 0.0) || !std::isfinite(c.sample_dt)) usage("--sample-dt must be > 0");
  }
  if (c.subcommand == "quench-swt") {
    if (!(c.dt > 0.0) || !std::isfinite(c.dt)) usage("--dt must be > 0");
    step_count(c.sample_dt, c.dt, "--sample-dt");
    step_count(c.t_max, c.dt, "--tmax");
  }
}

CommandResult run_command(const RunConfig& c) {
  validate_config(c);
  if (c.subcommand == "dispersion") return run_dispersion(c);
  if (c.subcommand == "regimes") return run_regimes(c);
  if (c.subcommand == "quench-swt") return run_quench_swt(c);
  if (c.subcommand == "quench-ed") return run_quench_ed(c);
  return run_reproducing(c);
}

CommandResult run_dispersion(const RunConfig& c) {
  const auto p = single_params(c);
  const auto setup = solve_classical_angle(p);
  const auto disp = build_dispersion(setup);

  CsvTable table({"k", "gamma_tilde", "a_k", "b_k", "omega", "v_g"});
  for (int n = 0; n < disp.size(); ++n) {
    table.cell(disp.grid[n]).cell(disp.gamma_tilde[n]).cell(disp.a_k[n]).cell(disp.b_k[n]);
    table.cell(disp.omega[n]).cell(disp.v_g[n]).end_row();
  }

  json side = base_sidecar(c);
  side["theta"] = p.theta;
  side["alpha"] = p.alpha;
  side["length"] = p.length;
  side["gamma"] = setup.gamma;
  side["v_max"] = disp.v_max;
  side["k_at_vmax"] = disp.k_vmax();
  side["k_at_vmax_index"] = disp.k_at_vmax;
  side["regime"] = to_string(classify_regime(p.alpha));
  side["marginal"] = is_marginal_regime(p.alpha);
  side["c1"] = disp.c1;
  side["c2"] = disp.c2;
  side["c3"] = disp.c3;
  return emit(c, std::move(side), {{"", &table}});
}

CommandResult run_regimes(const RunConfig& c) {
  CsvTable table({"alpha", "length", "v_max", "t_b", "fast_mode_count"});
  json fits = json::array();
  for (double a : c.alphas) {
    const auto r = velocity_scaling(theta_of(c), a, c.lengths, c.t0);
    for (std::size_t n = 0; n < c.lengths.size(); ++n) {
      table.cell(a).cell(r.v_max_by_length[n].first).cell(r.v_max_by_length[n].second);
      table.cell(r.boundary_time_by_length[n].second).cell(r.fast_mode_counts[n].second);
      table.end_row();
    }
    fits.push_back({{"alpha", a},
                    {"regime", to_string(r.regime)},
                    {"marginal", r.marginal},
                    {"fitted_exponent", r.fitted_exponent},
                    {"fast_mode_exponent", r.fast_mode_exponent}});
  }
  json side = base_sidecar(c);
  side["theta"] = theta_of(c);
  side["t0"] = c.t0;
  side["fits"] = std::move(fits);
  return emit(c, std::move(side), {{"", &table}});
}

CommandResult run_quench_swt(const RunConfig& c) {
  const auto p = single_params(c);
  const auto setup = solve_classical_angle(p);
  const auto disp = build_dispersion(setup);
  GaussianState state = apply_local_quench(ground_state_correlators(setup, disp), p.quench_site);
  const SpinWaveDynamics dynamics(setup);

  const long total = step_count(c.t_max, c.dt, "--tmax");
  const long per_sample = step_count(c.sample_dt, c.dt, "--sample-dt");
  const double scale = entropy_scale(c);
  const double e0 = dynamics.energy(state);

  CsvTable table({"t", "site", "delta_m", "s1_entropy"});
  double drift = 0.0;
  StructureCheck worst;
  worst.min_diagonal = std::numeric_limits<double>::infinity();
  bool flagged = false;
  std::optional<double> flagged_at;
  for (long n = 0;; ++n) {
    if (n % per_sample == 0) {
      const double t = n * c.dt;
      const auto dm = magnetization_profile(state);
      for (int i = 0; i < p.length; ++i) {
        table.cell(t).cell(i + 1).cell(dm[i]).cell(scale * single_site_entropy(dm[i]));
        table.end_row();
      }
      drift = std::max(drift, std::abs(dynamics.energy(state) - e0));
      const auto check = check_structure(state);
      worst.hermiticity = std::max(worst.hermiticity, check.hermiticity);
      worst.symmetry = std::max(worst.symmetry, check.symmetry);
      worst.imag_diagonal = std::max(worst.imag_diagonal, check.imag_diagonal);
      worst.min_diagonal = std::min(worst.min_diagonal, check.min_diagonal);
      if (!flagged && beyond_lswt(state)) {
        flagged = true;
        flagged_at = t;
      }
    }
    if (n == total) break;
    dynamics.step(state, c.dt, c.integrator);
  }

  json side = base_sidecar(c);
  side["theta"] = p.theta;
  side["alpha"] = p.alpha;
  side["length"] = p.length;
  side["quench_site"] = p.quench_site + 1;
  side["gamma"] = setup.gamma;
  side["v_max"] = disp.v_max;
  side["regime"] = to_string(classify_regime(p.alpha));
  side["energy_initial"] = e0;
  side["energy_final"] = dynamics.energy(state);
  side["energy_drift_max"] = drift;
  side["structure"] = {{"hermiticity", worst.hermiticity},
                       {"symmetry", worst.symmetry},
                       {"imag_diagonal", worst.imag_diagonal},
                       {"min_diagonal", worst.min_diagonal}};
  side["beyond_lswt"] = flagged;
  side["beyond_lswt_first_time"] = flagged_at ? json(*flagged_at) : json(nullptr);
  auto result = emit(c, std::move(side), {{"", &table}});
  if (flagged) {
    std::ostringstream msg;
    msg << "warning: occupation above one at t = " << *flagged_at
        << "; spin-wave results are beyond their validity range";
    result.warnings.push_back(msg.str());
  }
  return result;
}

CommandResult run_quench_ed(const RunConfig& c) {
  const auto p = single_params(c);
  const auto traj = quench_trajectory(p, c.t_max, c.sample_dt);
  const double scale = entropy_scale(c);
  const int L = p.length;
  const int half = L / 2;

  CsvTable entropy({"t", "cut", "entropy", "delta_entropy", "lambda1", "lambda2",
                    "lambda_rest_sum"});
  CsvTable magnet({"t", "site", "delta_m"});
  double norm_drift = 0.0, energy_drift = 0.0;
  double plateau_sum = 0.0;
  int plateau_count = 0;
  double plateau_top_two = 1.0;
  const double plateau_start = 0.5 * c.t_max;
  for (const auto& s : traj.samples) {
    norm_drift = std::max(norm_drift, std::abs(s.norm - 1.0));
    energy_drift = std::max(energy_drift, std::abs(s.energy - traj.samples.front().energy));
    for (const auto& cut : s.cuts) {
      const double l1 = cut.spectrum.size() > 0 ? cut.spectrum[0] : 0.0;
      const double l2 = cut.spectrum.size() > 1 ? cut.spectrum[1] : 0.0;
      double rest = 0.0;
      for (std::size_t n = 2; n < cut.spectrum.size(); ++n) rest += cut.spectrum[n];
      const double ds = cut.entropy - traj.initial_entropy[cut.block_size - 1];
      entropy.cell(s.time).cell(cut.block_size).cell(scale * cut.entropy).cell(scale * ds);
      entropy.cell(l1).cell(l2).cell(rest).end_row();
      if (cut.block_size == half && s.time >= plateau_start - 1e-12) {
        plateau_sum += ds;
        ++plateau_count;
        plateau_top_two = std::min(plateau_top_two, l1 + l2);
      }
    }
    for (int i = 0; i < L; ++i) magnet.cell(s.time).cell(i + 1).cell(s.delta_m[i]).end_row();
  }

  json side = base_sidecar(c);
  side["theta"] = p.theta;
  side["alpha"] = p.alpha;
  side["length"] = L;
  side["quench_site"] = p.quench_site + 1;
  side["ground_energy"] = traj.ground.energy;
  side["ground_residual"] = traj.ground.residual;
  side["gap_estimate"] = traj.ground.gap;
  side["degenerate_ground_state"] = traj.ground.degenerate;
  side["norm_drift_max"] = norm_drift;
  side["energy_drift_max"] = energy_drift;
  side["half_cut"] = half;
  side["plateau_window"] = {plateau_start, c.t_max};
  side["plateau_delta_entropy"] =
      plateau_count > 0 ? json(scale * plateau_sum / plateau_count) : json(nullptr);
  side["plateau_top_two_min"] = plateau_count > 0 ? json(plateau_top_two) : json(nullptr);
  auto result = emit(c, std::move(side), {{"entropy", &entropy}, {"magnetization", &magnet}});
  if (traj.ground.degenerate)
    result.warnings.push_back("warning: ground state is (near) degenerate; tie-broken choice used");
  return result;
}

CommandResult run_reproducing(const RunConfig& c) {
  CsvTable table({"alpha", "length", "pair_kind", "p_value", "lower_bound"});
  json verdicts = json::array();
  for (double a : c.alphas) {
    const auto r = scan_reproducing(a, c.lengths);
    for (const auto& s : r.samples) {
      const auto idx = static_cast<std::size_t>(
          std::find(r.lengths.begin(), r.lengths.end(), s.length) - r.lengths.begin());
      table.cell(a).cell(s.length).cell(std::string_view(s.kind)).cell(s.p);
      table.cell(r.lower_bound[idx]).end_row();
    }
    verdicts.push_back({{"alpha", a},
                        {"verdict", to_string(r.verdict)},
                        {"marginal", r.marginal},
                        {"fitted_exponent", r.fitted_exponent},
                        {"endpoint_exponent", r.endpoint_exponent},
                        {"p_max", r.p_max},
                        {"endpoint_p", r.endpoint_p},
                        {"lower_bound", r.lower_bound}});
  }
  json side = base_sidecar(c);
  side["results"] = std::move(verdicts);
  return emit(c, std::move(side), {{"", &table}});
}

}  // namespace lrti::cli
