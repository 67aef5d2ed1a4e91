#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "lrti/model.hpp"

namespace lrti {

inline constexpr int max_ed_length = 14;

/// Pauli-matrix Hamiltonian of the chain on the full 2^L space.
///
/// Basis state index b has spin s up (sigma_z = +1) iff bit s of b is set.
class EDHamiltonian {
 public:
  /// Throws Error(size_cap) for L > 14 and Error(invalid_params) for
  /// invalid parameters.
  explicit EDHamiltonian(const ModelParams& params);

  const ModelParams& params() const noexcept { return params_; }
  int length() const noexcept { return params_.length; }
  Eigen::Index dimension() const noexcept { return matrix_.rows(); }
  const Eigen::SparseMatrix<double, Eigen::RowMajor>& matrix() const noexcept { return matrix_; }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return matrix_ * v; }
  double expectation(const Eigen::VectorXcd& v) const;

  /// Dense copy; only for dimensions up to 4096.
  Eigen::MatrixXd dense() const;

 private:
  ModelParams params_;
  Eigen::SparseMatrix<double, Eigen::RowMajor> matrix_;
};

struct EDState {
  Eigen::VectorXcd amplitudes;
  double time = 0.0;
};

struct GroundState {
  EDState state;
  double energy = 0.0;
  double residual = 0.0;   // || H psi - E psi ||
  double gap = 0.0;        // estimate of E_1 - E_0
  bool degenerate = false; // gap < 1e-8; the returned vector is one tie-broken choice
};

/// Lowest eigenpair by restarted Lanczos with full reorthogonalization, to
/// residual 1e-10. The vector is real; its largest-magnitude amplitude
/// (lowest index on ties) is made positive. Throws Error(numeric_failure) if
/// the residual target is not reached.
GroundState ground_state(const EDHamiltonian& hamiltonian);

/// sigma_x on `site`: amplitudes permuted by flipping that bit.
EDState apply_sigma_x(const EDState& state, int site);

enum class Propagation { krylov, spectral };

/// exp(-i H t) psi. Krylov stepping keeps the estimated local error of each
/// substep below 1e-9; the spectral route diagonalizes H densely (L <= 10).
EDState evolve(const EDState& state, const EDHamiltonian& hamiltonian, double t,
               Propagation method = Propagation::krylov);

/// Reusable dense eigendecomposition for repeated spectral evolution.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const EDHamiltonian& hamiltonian);
  EDState evolve(const EDState& state, double t) const;
  const Eigen::VectorXd& energies() const noexcept { return energies_; }

 private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXd vectors_;
};

/// delta m_i = <Sz_i> + 1/2, the probability that site i is up.
std::vector<double> ed_magnetization(const EDState& state, int length);

struct EntanglementData {
  int block_size = 0;
  std::vector<double> spectrum;  // reduced density matrix eigenvalues, descending
  double entropy = 0.0;          // nats
};

/// Reduced state of sites 0..l-1, 1 <= l <= L-1.
EntanglementData entanglement(const EDState& state, int length, int block_size);

double entropy_from_spectrum(const std::vector<double>& spectrum);

struct EDSample {
  double time = 0.0;
  double norm = 0.0;
  double energy = 0.0;
  std::vector<double> delta_m;
  std::vector<EntanglementData> cuts;  // cuts[l - 1] is block size l
};

struct EDTrajectory {
  ModelParams params;
  GroundState ground;
  std::vector<double> initial_entropy;  // S_l at t = 0, index l - 1
  std::vector<EDSample> samples;
};

/// Ground state, sigma_x at params.quench_site, then samples every
/// `sample_dt` up to `t_max` (inclusive when commensurate).
EDTrajectory quench_trajectory(const ModelParams& params, double t_max, double sample_dt,
                               Propagation method = Propagation::krylov);

}  // namespace lrti
