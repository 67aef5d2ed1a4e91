#include "lrti/spin_wave.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>

#include "lrti/error.hpp"
#include "lrti/fit.hpp"
#include "lrti/kernel_sums.hpp"

namespace lrti {
namespace {

constexpr double S = ModelParams::spin;
constexpr double pi = std::numbers::pi;

double classical_energy_slope(const ModelParams& params, double gamma, double gt0) {
  const auto c = spin_couplings(params.theta);
  return params.length * std::sin(gamma) *
         (2.0 * S * S * c.exchange * gt0 * std::cos(gamma) + S * c.field);
}

}  // namespace

double SpinWaveSetup::onsite_half() const {
  const auto c = spin_couplings(params.theta);
  const double sg = std::sin(gamma);
  return 0.5 * c.field * std::cos(gamma) - S * c.exchange * sg * sg * gamma_tilde_zero;
}

double SpinWaveSetup::hopping() const {
  const double cg = std::cos(gamma);
  return 0.5 * spin_couplings(params.theta).exchange * S * cg * cg;
}

double classical_energy(const ModelParams& params, double gamma, double gamma_tilde_zero) {
  const auto c = spin_couplings(params.theta);
  const double sg = std::sin(gamma);
  return params.length *
         (S * S * c.exchange * sg * sg * gamma_tilde_zero - S * c.field * std::cos(gamma));
}

SpinWaveSetup solve_classical_angle(const ModelParams& params, std::optional<int> cutoff) {
  require_valid(params);
  SpinWaveSetup setup;
  setup.params = params;
  setup.kernel_cutoff = cutoff.value_or(params.length - 1);
  if (setup.kernel_cutoff < 1)
    throw Error(ErrorKind::invalid_argument, "kernel cutoff must be >= 1");
  setup.gamma_tilde_zero = gamma_tilde(0.0, params.alpha, setup.kernel_cutoff);

  const double gt0 = setup.gamma_tilde_zero;
  auto energy = [&](double g) { return classical_energy(params, g, gt0); };
  auto slope = [&](double g) { return classical_energy_slope(params, g, gt0); };

  // Coarse scan for the basin, Brent inside it, then polish on the slope:
  // the energy is too flat near the minimum to resolve 1e-10 from values.
  constexpr int scan = 4096;
  int best = 0;
  double best_energy = energy(0.0);
  for (int i = 1; i <= scan; ++i) {
    const double e = energy(pi * i / scan);
    if (e < best_energy) {
      best_energy = e;
      best = i;
    }
  }
  const double lo = pi * std::max(best - 1, 0) / scan;
  const double hi = pi * std::min(best + 1, scan) / scan;
  std::uintmax_t iterations = 200;
  auto [gamma, e_min] = boost::math::tools::brent_find_minima(energy, lo, hi, 52, iterations);
  if (iterations >= 200)
    throw Error(ErrorKind::numeric_failure, "classical angle: Brent search did not converge");

  constexpr double polish = 1e-6;
  const double a = std::max(gamma - polish, 0.0);
  const double b = std::min(gamma + polish, pi);
  if (a == 0.0 && energy(0.0) <= e_min) {
    gamma = 0.0;
  } else if (b == pi && energy(pi) <= e_min) {
    gamma = pi;
  } else if (slope(a) < 0.0 && slope(b) > 0.0) {
    std::uintmax_t root_iterations = 100;
    auto tol = [](double x, double y) { return std::abs(x - y) < 1e-12; };
    auto bracket = boost::math::tools::toms748_solve(slope, a, b, tol, root_iterations);
    if (root_iterations >= 100)
      throw Error(ErrorKind::numeric_failure, "classical angle: slope root did not converge");
    gamma = 0.5 * (bracket.first + bracket.second);
  }
  setup.gamma = gamma;

  constexpr double eps = 1e-4;
  const double e0 = energy(gamma);
  const double slack = 1e-13 * std::max(1.0, std::abs(e0));
  if ((gamma - eps >= 0.0 && energy(gamma - eps) < e0 - slack) ||
      (gamma + eps <= pi && energy(gamma + eps) < e0 - slack)) {
    throw Error(ErrorKind::numeric_failure, "classical angle is not a local minimum");
  }
  return setup;
}

double DispersionData::bogoliubov_angle(int n) const {
  const double w = omega.at(static_cast<std::size_t>(n));
  if (w <= 0.0) throw Error(ErrorKind::gapless_mode, "Bogoliubov angle undefined at omega = 0");
  return 0.5 * std::asinh(-2.0 * a_k[n] / w);
}

DispersionData build_dispersion(const SpinWaveSetup& setup) {
  const auto& p = setup.params;
  const int L = p.length;
  DispersionData out;
  out.grid = MomentumGrid(L);
  auto sums = gamma_tilde_on_grid(L, p.alpha, setup.kernel_cutoff);
  out.gamma_tilde = std::move(sums.value);
  out.gamma_tilde_prime = std::move(sums.derivative);

  const double hop = setup.hopping();
  const double onsite = setup.onsite_half();
  const double cg = std::cos(setup.gamma);
  // omega^2 = 8 hop onsite gt + 4 onsite^2; the cos(gamma) factors keep c1
  // in its conventional form. cos(gamma) >= 0 for theta in [0, pi/2].
  out.c1 = 2.0 * S * spin_couplings(p.theta).exchange * cg * cg * cg * onsite;
  out.c2 = 8.0 * hop * onsite * cg * cg;
  out.c3 = 4.0 * onsite * onsite * cg * cg;

  const auto n_modes = static_cast<std::size_t>(L);
  out.a_k.resize(n_modes);
  out.b_k.resize(n_modes);
  out.omega.resize(n_modes);
  out.v_g.resize(n_modes);
  for (int n = 0; n < L; ++n) {
    const double gt = out.gamma_tilde[n];
    out.a_k[n] = hop * gt;
    out.b_k[n] = 2.0 * hop * gt + 2.0 * onsite;
    double w2 = out.b_k[n] * out.b_k[n] - 4.0 * out.a_k[n] * out.a_k[n];
    if (w2 < -1e-12) {
      std::ostringstream msg;
      msg << "spin-wave instability at mode " << n << " (k = " << out.grid[n]
          << "): B^2 - 4A^2 = " << w2;
      throw Error(ErrorKind::spin_wave_instability, msg.str());
    }
    w2 = std::max(w2, 0.0);
    out.omega[n] = std::sqrt(w2);

    const double denom = out.c2 * gt + out.c3;
    out.v_g[n] = denom > 0.0 ? out.c1 * out.gamma_tilde_prime[n] / std::sqrt(denom) : 0.0;
  }

  for (int n = 1; n < L; ++n) {
    if (std::abs(out.v_g[n]) > out.v_max) {
      out.v_max = std::abs(out.v_g[n]);
      out.k_at_vmax = n;
    }
  }
  return out;
}

CuspMeasure cusp_at_pi(const DispersionData& dispersion) {
  const int c = dispersion.grid.pi_index();
  if (c < 0) throw Error(ErrorKind::invalid_argument, "cusp measure needs an even chain length");
  const auto& w = dispersion.omega;
  const double dk = dispersion.grid.spacing();
  const double second = w[c + 1] - 2.0 * w[c] + w[c - 1];
  return {second, second / dk, second / (dk * dk)};
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::short_range_like: return "short-range-like";
    case Regime::weakly_long_range: return "weakly-long-range";
    case Regime::non_local: return "non-local";
  }
  return "unknown";
}

Regime classify_regime(double alpha) {
  if (alpha >= 2.0) return Regime::short_range_like;
  if (alpha > 1.0) return Regime::weakly_long_range;
  return Regime::non_local;
}

bool is_marginal_regime(double alpha) { return alpha == 1.0 || alpha == 2.0; }

int fast_mode_count(const DispersionData& dispersion, double t0) {
  if (!(t0 > 0.0)) throw Error(ErrorKind::invalid_argument, "fast-mode count needs t0 > 0");
  const double threshold = 0.5 * dispersion.size() / t0;
  return static_cast<int>(std::count_if(dispersion.v_g.begin(), dispersion.v_g.end(),
                                        [&](double v) { return std::abs(v) > threshold; }));
}

int fast_mode_count(double theta, double alpha, int length, double t0) {
  const auto setup = solve_classical_angle(ModelParams::make(theta, alpha, length));
  return fast_mode_count(build_dispersion(setup), t0);
}

RegimeReport velocity_scaling(double theta, double alpha, const std::vector<int>& lengths,
                              double t0) {
  if (lengths.size() < 4)
    throw Error(ErrorKind::invalid_argument, "velocity scaling needs at least 4 lengths");
  const double ratio = static_cast<double>(lengths[1]) / lengths[0];
  for (std::size_t i = 1; i < lengths.size(); ++i) {
    const double r = static_cast<double>(lengths[i]) / lengths[i - 1];
    if (!(r > 1.0) || std::abs(r / ratio - 1.0) > 0.05)
      throw Error(ErrorKind::invalid_argument,
                  "velocity scaling needs increasing, geometrically spaced lengths");
  }

  RegimeReport report;
  report.theta = theta;
  report.alpha = alpha;
  report.regime = classify_regime(alpha);
  report.marginal = is_marginal_regime(alpha);
  report.t0 = t0;

  std::vector<double> ls, vs, counts;
  bool all_counted = true;
  for (int L : lengths) {
    const auto setup = solve_classical_angle(ModelParams::make(theta, alpha, L));
    const auto disp = build_dispersion(setup);
    const int count = fast_mode_count(disp, t0);
    report.v_max_by_length.emplace_back(L, disp.v_max);
    report.boundary_time_by_length.emplace_back(
        L, disp.v_max > 0.0 ? L / (2.0 * disp.v_max) : std::numeric_limits<double>::infinity());
    report.fast_mode_counts.emplace_back(L, count);
    ls.push_back(L);
    vs.push_back(disp.v_max);
    counts.push_back(count);
    all_counted = all_counted && count > 0;
  }
  bool moving = std::all_of(vs.begin(), vs.end(), [](double v) { return v > 0.0; });
  report.fitted_exponent = moving ? loglog_slope(ls, vs) : 0.0;
  report.fast_mode_exponent = all_counted ? loglog_slope(ls, counts) : 0.0;
  return report;
}

}  // namespace lrti
