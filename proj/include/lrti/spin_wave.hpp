#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "lrti/model.hpp"

namespace lrti {

/// Classical reference configuration for linear spin-wave theory.
///
/// Spins are rotated by the angle `gamma` out of the field axis on two
/// sublattices; gamma minimizes the classical energy
///
///   E(gamma) = L (2S)^2 sin(theta) sin^2(gamma) gt0 - L 2S cos(theta) cos(gamma)
///
/// with gt0 = gamma_tilde(k = 0) at the same kernel cutoff.
struct SpinWaveSetup {
  ModelParams params;
  double gamma = 0.0;
  double gamma_tilde_zero = 0.0;
  int kernel_cutoff = 1;

  /// cos(theta) cos(gamma) - 4 S sin(theta) sin^2(gamma) gt0; half the
  /// uniform on-site boson energy.
  double onsite_half() const;
  /// 2 S sin(theta) cos^2(gamma); prefactor of the staggered boson hopping.
  double hopping() const;
};

double classical_energy(const ModelParams& params, double gamma, double gamma_tilde_zero);

/// Minimizes the classical energy over gamma in [0, pi] (absolute tolerance
/// 1e-10). The kernel cutoff defaults to L-1, the longest bond of the chain.
SpinWaveSetup solve_classical_angle(const ModelParams& params,
                                    std::optional<int> cutoff = std::nullopt);

/// Bogoliubov spectrum on the periodic grid k_n = 2 pi n / L.
struct DispersionData {
  MomentumGrid grid{1};
  std::vector<double> gamma_tilde;
  std::vector<double> gamma_tilde_prime;
  std::vector<double> a_k;
  std::vector<double> b_k;
  std::vector<double> omega;
  std::vector<double> v_g;
  double v_max = 0.0;
  int k_at_vmax = 0;  // mode index; the smaller of the two mirror modes
  // v_g = c1 gamma_tilde' / sqrt(c2 gamma_tilde + c3)
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  int size() const noexcept { return grid.size(); }
  double k_vmax() const { return grid[k_at_vmax]; }
  /// beta_k with cosh(2 beta) = B/omega and sinh(2 beta) = -2A/omega.
  double bogoliubov_angle(int n) const;
};

/// Throws Error(spin_wave_instability) naming the first mode with
/// B^2 - 4 A^2 < -1e-12; smaller negative values are clamped to zero.
DispersionData build_dispersion(const SpinWaveSetup& setup);

/// Finite-difference shape of omega around k = pi (even L only).
struct CuspMeasure {
  double second_difference;  // omega(pi+dk) - 2 omega(pi) + omega(pi-dk)
  double slope_jump;         // second_difference / dk: jump of the one-sided slopes
  double curvature;          // second_difference / dk^2
};

CuspMeasure cusp_at_pi(const DispersionData& dispersion);

enum class Regime { short_range_like, weakly_long_range, non_local };

std::string_view to_string(Regime regime);

/// alpha >= 2 short-range-like, 1 < alpha < 2 weakly long-range,
/// alpha <= 1 non-local.
Regime classify_regime(double alpha);

/// True at the regime boundaries alpha = 1 and alpha = 2.
bool is_marginal_regime(double alpha);

/// Number of grid modes with |v_g| > (L/2)/t0.
int fast_mode_count(const DispersionData& dispersion, double t0);
int fast_mode_count(double theta, double alpha, int length, double t0);

struct RegimeReport {
  double theta = 0.0;
  double alpha = 0.0;
  Regime regime = Regime::short_range_like;
  bool marginal = false;
  double t0 = 0.0;
  std::vector<std::pair<int, double>> v_max_by_length;
  double fitted_exponent = 0.0;  // d log v_max / d log L
  std::vector<std::pair<int, double>> boundary_time_by_length;  // L / (2 v_max)
  std::vector<std::pair<int, int>> fast_mode_counts;
  double fast_mode_exponent = 0.0;  // d log count / d log L (0 if any count is 0)
};

/// Sweeps v_max over >= 4 geometrically spaced chain lengths.
RegimeReport velocity_scaling(double theta, double alpha, const std::vector<int>& lengths,
                              double t0 = 50.0);

}  // namespace lrti
