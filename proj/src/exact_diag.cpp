#include "lrti/exact_diag.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <sstream>

#include "lrti/error.hpp"

namespace lrti {
namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

constexpr double residual_target = 1e-10;
constexpr double krylov_tolerance = 1e-9;
constexpr int krylov_dimension = 40;
constexpr Index dense_ground_state_limit = 256;

// Largest-magnitude entry (lowest index on ties) made positive.
void fix_sign(VectorXd& v) {
  Index best = 0;
  for (Index i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) > std::abs(v(best)) * (1.0 + 1e-12)) best = i;
  if (v(best) < 0.0) v = -v;
}

VectorXd start_vector(Index dim) {
  std::mt19937_64 rng(0x5eed1234abcdULL);
  VectorXd v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  return v.normalized();
}

struct LanczosResult {
  VectorXd ritz_values;
  MatrixXd ritz_vectors;  // in the full space, leading columns only
};

// One Lanczos cycle of at most m steps with full reorthogonalization. Vectors
// in `deflate` are projected out at every step.
LanczosResult lanczos_cycle(const EDHamiltonian& h, VectorXd v, int m, const MatrixXd& deflate,
                            int wanted) {
  const Index dim = h.dimension();
  const auto project = [&](VectorXd& w) {
    if (deflate.cols() > 0) w -= deflate * (deflate.transpose() * w);
  };
  project(v);
  v.normalize();

  MatrixXd basis(dim, m);
  std::vector<double> alpha, beta;
  basis.col(0) = v;
  int steps = 0;
  for (int j = 0; j < m; ++j) {
    VectorXd w = h.matrix() * basis.col(j);
    alpha.push_back(basis.col(j).dot(w));
    project(w);
    for (int pass = 0; pass < 2; ++pass)
      w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
    steps = j + 1;
    const double b = w.norm();
    if (j + 1 == m || b < 1e-12) break;
    beta.push_back(b);
    basis.col(j + 1) = w / b;
  }

  MatrixXd t = MatrixXd::Zero(steps, steps);
  for (int j = 0; j < steps; ++j) {
    t(j, j) = alpha[j];
    if (j + 1 < steps) t(j, j + 1) = t(j + 1, j) = beta[j];
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(t);
  const int k = std::min(wanted, steps);
  LanczosResult out;
  out.ritz_values = eig.eigenvalues().head(k);
  out.ritz_vectors = basis.leftCols(steps) * eig.eigenvectors().leftCols(k);
  return out;
}

GroundState finish(const EDHamiltonian& h, VectorXd v, double energy, double gap) {
  fix_sign(v);
  GroundState gs;
  gs.energy = energy;
  gs.residual = (h.matrix() * v - energy * v).norm();
  gs.gap = gap;
  gs.degenerate = gap < 1e-8;
  gs.state.amplitudes = v.cast<std::complex<double>>();
  return gs;
}

void require_site(int site, int length) {
  if (site < 0 || site >= length)
    throw Error(ErrorKind::invalid_argument, "site " + std::to_string(site) + " outside the chain");
}

int chain_length(const EDState& state) {
  const Index dim = state.amplitudes.size();
  int length = 0;
  while ((Index{1} << length) < dim) ++length;
  if ((Index{1} << length) != dim || length < 1)
    throw Error(ErrorKind::invalid_argument, "state dimension is not a power of two");
  return length;
}

}  // namespace

EDHamiltonian::EDHamiltonian(const ModelParams& params) : params_(params) {
  if (params.length > max_ed_length)
    throw Error(ErrorKind::size_cap, "exact diagonalization is capped at L = " +
                                         std::to_string(max_ed_length) + " (requested L = " +
                                         std::to_string(params.length) + ")");
  require_valid(params);
  const int L = params.length;
  const Index dim = Index{1} << L;
  const double field = std::cos(params.theta);
  const double exchange = std::sin(params.theta);

  std::vector<std::pair<Index, double>> bonds;  // flip mask, coupling
  if (exchange != 0.0) {
    for (int i = 0; i < L; ++i)
      for (int j = i + 1; j < L; ++j)
        bonds.emplace_back((Index{1} << i) | (Index{1} << j),
                           exchange * coupling(i, j, params));
  }

  matrix_.resize(dim, dim);
  matrix_.reserve(Eigen::VectorXi::Constant(dim, static_cast<int>(bonds.size()) + 1));
  std::vector<std::pair<Index, double>> row;
  for (Index b = 0; b < dim; ++b) {
    row.clear();
    const int up = std::popcount(static_cast<unsigned long long>(b));
    const double diag = field * (2 * up - L);
    if (diag != 0.0) row.emplace_back(b, diag);
    for (const auto& [mask, value] : bonds) row.emplace_back(b ^ mask, value);
    std::sort(row.begin(), row.end());
    for (const auto& [col, value] : row) matrix_.insert(b, col) = value;
  }
  matrix_.makeCompressed();
}

double EDHamiltonian::expectation(const VectorXcd& v) const {
  return v.dot(matrix_ * v).real() / v.squaredNorm();
}

MatrixXd EDHamiltonian::dense() const {
  if (dimension() > 4096)
    throw Error(ErrorKind::size_cap, "dense copy limited to dimension 4096");
  return MatrixXd(matrix_);
}

GroundState ground_state(const EDHamiltonian& h) {
  const Index dim = h.dimension();
  if (dim <= dense_ground_state_limit) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(h.dense());
    const auto& e = eig.eigenvalues();
    return finish(h, eig.eigenvectors().col(0), e(0), e(1) - e(0));
  }

  const int m = static_cast<int>(std::min<Index>(dim, 80));
  VectorXd v = start_vector(dim);
  double energy = 0.0;
  double residual = 1.0;
  for (int cycle = 0; cycle < 100 && residual >= residual_target; ++cycle) {
    auto r = lanczos_cycle(h, v, m, MatrixXd(), 1);
    energy = r.ritz_values(0);
    v = r.ritz_vectors.col(0).normalized();
    residual = (h.matrix() * v - energy * v).norm();
  }
  if (residual >= residual_target) {
    std::ostringstream msg;
    msg << "Lanczos ground state did not converge (residual " << residual << ")";
    throw Error(ErrorKind::numeric_failure, msg.str());
  }
  energy = h.expectation(v.cast<std::complex<double>>());

  // First excited level from the deflated problem.
  MatrixXd deflate = v;
  double excited = energy;
  double excited_residual = 1.0;
  VectorXd u = start_vector(dim);
  for (int cycle = 0; cycle < 100 && excited_residual >= 1e-6; ++cycle) {
    auto r = lanczos_cycle(h, u, m, deflate, 1);
    excited = r.ritz_values(0);
    u = r.ritz_vectors.col(0).normalized();
    VectorXd hu = h.matrix() * u;
    hu -= deflate * (deflate.transpose() * hu);
    excited_residual = (hu - excited * u).norm();
  }
  return finish(h, v, energy, excited - energy);
}

EDState apply_sigma_x(const EDState& state, int site) {
  const int L = chain_length(state);
  require_site(site, L);
  const Index mask = Index{1} << site;
  EDState out;
  out.time = state.time;
  out.amplitudes.resize(state.amplitudes.size());
  for (Index b = 0; b < state.amplitudes.size(); ++b) out.amplitudes(b ^ mask) = state.amplitudes(b);
  return out;
}

EDState evolve(const EDState& state, const EDHamiltonian& h, double t, Propagation method) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw Error(ErrorKind::invalid_argument, "evolution time must be finite and >= 0");
  if (state.amplitudes.size() != h.dimension())
    throw Error(ErrorKind::invalid_argument, "state dimension does not match the Hamiltonian");
  if (method == Propagation::spectral) return SpectralPropagator(h).evolve(state, t);

  const Index dim = h.dimension();
  const int m = static_cast<int>(std::min<Index>(dim, krylov_dimension));
  VectorXcd v = state.amplitudes;
  double remaining = t;
  double tau = t;
  int substeps = 0;
  while (remaining > 0.0) {
    if (++substeps > 1000000)
      throw Error(ErrorKind::numeric_failure, "Krylov evolution exceeded the substep budget");
    const double norm = v.norm();
    if (norm == 0.0) break;

    MatrixXcd basis(dim, m);
    std::vector<double> alpha, beta;
    basis.col(0) = v / norm;
    int steps = 0;
    double residual_beta = 0.0;
    for (int j = 0; j < m; ++j) {
      VectorXcd w = h.matrix() * basis.col(j);
      alpha.push_back(basis.col(j).dot(w).real());
      for (int pass = 0; pass < 2; ++pass)
        w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).adjoint() * w);
      steps = j + 1;
      residual_beta = w.norm();
      if (residual_beta < 1e-12) {
        residual_beta = 0.0;
        break;
      }
      if (j + 1 == m) break;
      beta.push_back(residual_beta);
      basis.col(j + 1) = w / residual_beta;
    }

    MatrixXd tri = MatrixXd::Zero(steps, steps);
    for (int j = 0; j < steps; ++j) {
      tri(j, j) = alpha[j];
      if (j + 1 < steps) tri(j, j + 1) = tri(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(tri);
    const MatrixXd& q = eig.eigenvectors();
    const auto propagate = [&](double dt) {
      VectorXcd c(steps);
      for (int n = 0; n < steps; ++n)
        c(n) = std::polar(q(0, n), -dt * eig.eigenvalues()(n));
      return VectorXcd(q.cast<std::complex<double>>() * c);
    };

    tau = std::min(tau, remaining);
    VectorXcd y;
    for (int halvings = 0;; ++halvings) {
      y = propagate(tau);
      const double error = residual_beta * norm * std::abs(y(steps - 1));
      if (error <= krylov_tolerance) break;
      if (halvings > 60)
        throw Error(ErrorKind::numeric_failure, "Krylov step size underflow");
      tau *= 0.5;
    }
    v = norm * (basis.leftCols(steps) * y);
    remaining -= tau;
    if (remaining < 1e-14 * std::max(1.0, t)) remaining = 0.0;
    tau *= 1.5;
  }

  EDState out;
  out.amplitudes = std::move(v);
  out.time = state.time + t;
  return out;
}

SpectralPropagator::SpectralPropagator(const EDHamiltonian& h) {
  if (h.length() > 10)
    throw Error(ErrorKind::size_cap, "spectral propagation limited to L <= 10");
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(h.dense());
  energies_ = eig.eigenvalues();
  vectors_ = eig.eigenvectors();
}

EDState SpectralPropagator::evolve(const EDState& state, double t) const {
  if (state.amplitudes.size() != vectors_.rows())
    throw Error(ErrorKind::invalid_argument, "state dimension does not match the Hamiltonian");
  const MatrixXcd v = vectors_.cast<std::complex<double>>();
  VectorXcd c = v.adjoint() * state.amplitudes;
  for (Index n = 0; n < c.size(); ++n) c(n) *= std::polar(1.0, -t * energies_(n));
  EDState out;
  out.amplitudes = v * c;
  out.time = state.time + t;
  return out;
}

std::vector<double> ed_magnetization(const EDState& state, int length) {
  if (state.amplitudes.size() != (Index{1} << length))
    throw Error(ErrorKind::invalid_argument, "state dimension does not match the chain length");
  std::vector<double> dm(static_cast<std::size_t>(length), 0.0);
  for (Index b = 0; b < state.amplitudes.size(); ++b) {
    const double p = std::norm(state.amplitudes(b));
    for (int s = 0; s < length; ++s)
      if ((b >> s) & 1) dm[s] += p;
  }
  return dm;
}

double entropy_from_spectrum(const std::vector<double>& spectrum) {
  double s = 0.0;
  for (double p : spectrum)
    if (p > 0.0) s -= p * std::log(p);
  return std::max(s, 0.0);
}

EntanglementData entanglement(const EDState& state, int length, int block_size) {
  if (state.amplitudes.size() != (Index{1} << length))
    throw Error(ErrorKind::invalid_argument, "state dimension does not match the chain length");
  if (block_size < 1 || block_size > length - 1)
    throw Error(ErrorKind::invalid_argument, "block size must lie in [1, L-1]");

  // Row index: sites 0..l-1 (low bits); column index: the rest.
  const Index rows = Index{1} << block_size;
  const Index cols = Index{1} << (length - block_size);
  Eigen::Map<const MatrixXcd> psi(state.amplitudes.data(), rows, cols);
  const MatrixXcd rho = rows <= cols ? MatrixXcd(psi * psi.adjoint())
                                     : MatrixXcd(psi.transpose() * psi.conjugate());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(rho, Eigen::EigenvaluesOnly);

  EntanglementData out;
  out.block_size = block_size;
  const auto& ev = eig.eigenvalues();
  out.spectrum.assign(ev.data(), ev.data() + ev.size());
  std::reverse(out.spectrum.begin(), out.spectrum.end());
  out.entropy = entropy_from_spectrum(out.spectrum);
  return out;
}

EDTrajectory quench_trajectory(const ModelParams& params, double t_max, double sample_dt,
                               Propagation method) {
  if (!(t_max >= 0.0) || !(sample_dt > 0.0))
    throw Error(ErrorKind::invalid_argument, "need t_max >= 0 and sample_dt > 0");
  const EDHamiltonian h(params);
  const int L = params.length;

  EDTrajectory traj;
  traj.params = params;
  traj.ground = ground_state(h);
  for (int l = 1; l < L; ++l)
    traj.initial_entropy.push_back(entanglement(traj.ground.state, L, l).entropy);

  std::optional<SpectralPropagator> spectral;
  if (method == Propagation::spectral) spectral.emplace(h);

  EDState psi = apply_sigma_x(traj.ground.state, params.quench_site);
  const auto samples = static_cast<long>(std::floor(t_max / sample_dt + 1e-9));
  for (long n = 0; n <= samples; ++n) {
    const double t = n * sample_dt;
    if (n > 0) {
      const double dt = t - psi.time;
      psi = spectral ? spectral->evolve(psi, dt) : evolve(psi, h, dt);
      psi.time = t;
    }
    EDSample s;
    s.time = t;
    s.norm = psi.amplitudes.norm();
    s.energy = h.expectation(psi.amplitudes);
    s.delta_m = ed_magnetization(psi, L);
    for (int l = 1; l < L; ++l) s.cuts.push_back(entanglement(psi, L, l));
    traj.samples.push_back(std::move(s));
  }
  return traj;
}

}  // namespace lrti
