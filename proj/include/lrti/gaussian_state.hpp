#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lrti/spin_wave.hpp"

namespace lrti {

/// Two-point functions of a bosonic Gaussian state on the open chain:
///   f(i,j) = <a_i^dag a_j> + delta_ij / 2,   g(i,j) = <a_i^dag a_j^dag>.
struct GaussianState {
  Eigen::MatrixXcd f;
  Eigen::MatrixXcd g;
  double time = 0.0;

  int size() const noexcept { return static_cast<int>(f.rows()); }
};

/// Worst violations of the Gaussian-state structure.
struct StructureCheck {
  double hermiticity = 0.0;    // max |f - f^dag|
  double symmetry = 0.0;       // max |g - g^T|
  double min_diagonal = 0.0;   // min Re f(i,i); >= 1/2 for a physical state
  double imag_diagonal = 0.0;  // max |Im f(i,i)|

  bool holds(double tol) const {
    return hermiticity <= tol && symmetry <= tol && imag_diagonal <= tol &&
           min_diagonal >= 0.5 - tol;
  }
};

StructureCheck check_structure(const GaussianState& state);

/// delta m_i = Re f(i,i) - 1/2.
std::vector<double> magnetization_profile(const GaussianState& state);

/// Occupations above one are unphysical for spin-1/2; the state has left the
/// regime where the boson mapping is faithful.
bool beyond_lswt(const GaussianState& state);

/// Ground-state correlators from the Bogoliubov mode sums
///   f(i,j) = 1/(2L) sum_k B_k/omega_k e^{ik(j-i)},
///   g(i,j) = 1/(2L) sum_k -2A_k/omega_k e^{ik(j-i)}.
/// Throws Error(gapless_mode) if any omega_k vanishes.
GaussianState ground_state_correlators(const SpinWaveSetup& setup,
                                       const DispersionData& dispersion);

/// N = <Sx'_m Sx'_m> = [Re<a_m a_m> + <a_m^dag a_m> + 1/2] / 2.
double quench_normalization(const GaussianState& state, int site);

/// Post-quench correlators of Sx'_m |psi> / sqrt(N) from Wick factorization
/// of the pre-quench two-point functions. The input must be at time 0.
GaussianState apply_local_quench(const GaussianState& state, int site);

enum class Integrator { euler, rk4 };
enum class Boundary { open, periodic };

/// Real-space quadratic boson Hamiltonian
///
///   H = sum_{i<j} T_ij (a_i + a_i^dag)(a_j + a_j^dag) + D sum_i n_i + E_cl
///
/// with T_ij = 2S sin(theta) cos^2(gamma) (-1)^{i-j} / |i-j|^alpha and
/// D = 2 (cos(theta) cos(gamma) - 4S sin(theta) sin^2(gamma) gt0).
/// `Boundary::open` uses the physical chain couplings and drives the
/// dynamics. `Boundary::periodic` folds the kernel onto a ring so that it is
/// diagonal on the momentum grid; it is used to compare with mode sums.
class SpinWaveDynamics {
 public:
  explicit SpinWaveDynamics(const SpinWaveSetup& setup, Boundary boundary = Boundary::open);

  /// Advances by dt with Heisenberg's equations for f and g. Throws
  /// Error(numeric_failure) naming the first non-finite entry.
  void step(GaussianState& state, double dt, Integrator integrator = Integrator::euler) const;

  /// <H> for a Gaussian state; exact for the quadratic Hamiltonian above.
  double energy(const GaussianState& state) const;

  const Eigen::MatrixXd& hopping_matrix() const noexcept { return hopping_; }
  double onsite() const noexcept { return onsite_; }

 private:
  void rates(const Eigen::MatrixXcd& f, const Eigen::MatrixXcd& g, Eigen::MatrixXcd& df,
             Eigen::MatrixXcd& dg) const;

  Eigen::MatrixXd hopping_;
  double onsite_ = 0.0;
  double constant_ = 0.0;
};

/// One update of dt; convenience wrapper that rebuilds the couplings.
GaussianState step(const GaussianState& state, double dt, const SpinWaveSetup& setup,
                   Integrator integrator = Integrator::euler);

double lswt_energy(const GaussianState& state, const SpinWaveSetup& setup,
                   Boundary boundary = Boundary::open);

/// sum_k (omega_k - B_k)/2 + sum_k A_k + classical energy.
double mode_space_ground_energy(const SpinWaveSetup& setup, const DispersionData& dispersion);

/// (dm + 1) log(dm + 1) - dm log(dm) in nats, with dm log dm -> 0 at dm = 0.
/// Inputs in [-1e-9, 0) clamp to zero; below that throws Error(domain_error).
double single_site_entropy(double delta_m);

}  // namespace lrti
