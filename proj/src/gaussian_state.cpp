#include "lrti/gaussian_state.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "lrti/error.hpp"
#include "lrti/kernel_sums.hpp"

namespace lrti {
namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;

constexpr std::complex<double> I{0.0, 1.0};

// T * X for real T and complex X as two real products.
MatrixXcd left_multiply(const MatrixXd& t, const MatrixXcd& x) {
  MatrixXcd out(x.rows(), x.cols());
  const MatrixXd re = t * x.real();
  const MatrixXd im = t * x.imag();
  out.real() = re;
  out.imag() = im;
  return out;
}

MatrixXcd right_multiply(const MatrixXcd& x, const MatrixXd& t) {
  MatrixXcd out(x.rows(), x.cols());
  const MatrixXd re = x.real() * t;
  const MatrixXd im = x.imag() * t;
  out.real() = re;
  out.imag() = im;
  return out;
}

void require_finite(const MatrixXcd& m, const char* name, double time) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const auto z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        std::ostringstream msg;
        msg << "non-finite correlator " << name << "(" << i << "," << j << ") at t = " << time;
        throw Error(ErrorKind::numeric_failure, msg.str());
      }
    }
  }
}

void require_site(const GaussianState& state, int site) {
  if (site < 0 || site >= state.size())
    throw Error(ErrorKind::invalid_argument,
                "quench site " + std::to_string(site) + " outside the chain");
}

}  // namespace

StructureCheck check_structure(const GaussianState& state) {
  StructureCheck c;
  c.min_diagonal = std::numeric_limits<double>::infinity();
  const auto n = state.size();
  for (int i = 0; i < n; ++i) {
    c.min_diagonal = std::min(c.min_diagonal, state.f(i, i).real());
    c.imag_diagonal = std::max(c.imag_diagonal, std::abs(state.f(i, i).imag()));
    for (int j = 0; j < n; ++j) {
      c.hermiticity = std::max(c.hermiticity, std::abs(state.f(i, j) - std::conj(state.f(j, i))));
      c.symmetry = std::max(c.symmetry, std::abs(state.g(i, j) - state.g(j, i)));
    }
  }
  return c;
}

std::vector<double> magnetization_profile(const GaussianState& state) {
  std::vector<double> dm(static_cast<std::size_t>(state.size()));
  for (int i = 0; i < state.size(); ++i) dm[i] = state.f(i, i).real() - 0.5;
  return dm;
}

bool beyond_lswt(const GaussianState& state) {
  for (int i = 0; i < state.size(); ++i)
    if (state.f(i, i).real() - 0.5 > 1.0) return true;
  return false;
}

GaussianState ground_state_correlators(const SpinWaveSetup& setup,
                                       const DispersionData& dispersion) {
  const int L = dispersion.size();
  if (L != setup.params.length)
    throw Error(ErrorKind::invalid_argument, "dispersion does not match the chain length");
  for (int n = 0; n < L; ++n) {
    if (!(dispersion.omega[n] > 0.0)) {
      std::ostringstream msg;
      msg << "gapless mode " << n << " (k = " << dispersion.grid[n]
          << "): ground-state correlators diverge";
      throw Error(ErrorKind::gapless_mode, msg.str());
    }
  }

  std::vector<double> cos_table(static_cast<std::size_t>(L));
  for (int j = 0; 2 * j <= L; ++j) {
    cos_table[j] = std::cos(2.0 * std::numbers::pi * j / L);
    cos_table[(L - j) % L] = cos_table[j];
  }

  // Both correlators are real circulants: the weights are even in k.
  std::vector<double> f_row(static_cast<std::size_t>(L)), g_row(f_row.size());
  for (int d = 0; d < L; ++d) {
    double f = 0.0, g = 0.0;
    long long phase = 0;
    for (int n = 0; n < L; ++n) {
      const double c = cos_table[phase];
      f += dispersion.b_k[n] / dispersion.omega[n] * c;
      g += -2.0 * dispersion.a_k[n] / dispersion.omega[n] * c;
      phase += d;
      if (phase >= L) phase %= L;
    }
    f_row[d] = f / (2.0 * L);
    g_row[d] = g / (2.0 * L);
  }

  GaussianState state;
  state.f.resize(L, L);
  state.g.resize(L, L);
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      const int d = std::abs(i - j);
      state.f(i, j) = f_row[d];
      state.g(i, j) = g_row[d];
    }
  }
  return state;
}

double quench_normalization(const GaussianState& state, int site) {
  require_site(state, site);
  const double aa = state.g(site, site).real();  // Re<a a> = Re<a^dag a^dag>
  const double n = state.f(site, site).real() - 0.5;
  return 0.5 * (aa + n + 0.5);
}

GaussianState apply_local_quench(const GaussianState& state, int site) {
  require_site(state, site);
  if (state.time != 0.0)
    throw Error(ErrorKind::invalid_argument, "the quench acts on the state at t = 0");
  const double norm = quench_normalization(state, site);
  if (norm <= 1e-12)
    throw Error(ErrorKind::degenerate_quench,
                "quench normalization " + std::to_string(norm) + " is not positive");

  // X = a_m + a_m^dag. u_i = <X a_i^dag>, y_i = <a_i^dag X>; <X X> = 4 N.
  const int L = state.size();
  Eigen::VectorXcd u(L), y(L);
  for (int i = 0; i < L; ++i) {
    const double delta = i == site ? 0.5 : 0.0;
    u(i) = state.f(i, site) + delta + state.g(site, i);
    y(i) = state.f(i, site) - delta + state.g(i, site);
  }
  const double xx = 4.0 * norm;
  GaussianState out = state;
  out.f += (u * u.adjoint() + y * y.adjoint()) / xx;
  out.g += (u * y.transpose() + y * u.transpose()) / xx;
  return out;
}

SpinWaveDynamics::SpinWaveDynamics(const SpinWaveSetup& setup, Boundary boundary) {
  const auto& p = setup.params;
  const int L = p.length;
  const double hop = setup.hopping();
  onsite_ = 2.0 * setup.onsite_half();
  constant_ = classical_energy(p, setup.gamma, setup.gamma_tilde_zero);
  hopping_ = MatrixXd::Zero(L, L);

  if (boundary == Boundary::open) {
    for (int i = 0; i < L; ++i)
      for (int j = i + 1; j < L; ++j) {
        const double sign = (j - i) % 2 == 0 ? 1.0 : -1.0;
        hopping_(i, j) = hopping_(j, i) = hop * sign * power_law_kernel(j - i, p.alpha);
      }
    return;
  }

  // Ring kernel: each bond length d <= cutoff contributes to both offsets
  // d and L - d, which makes the hopping diagonal on the momentum grid.
  if (setup.kernel_cutoff >= L)
    throw Error(ErrorKind::invalid_argument, "periodic kernel needs cutoff < L");
  std::vector<double> ring(static_cast<std::size_t>(L), 0.0);
  for (int d = 1; d <= setup.kernel_cutoff; ++d) {
    const double w = (d % 2 == 0 ? 1.0 : -1.0) * power_law_kernel(d, p.alpha);
    ring[d] += w;
    ring[L - d] += w;
  }
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j)
      if (i != j) hopping_(i, j) = hop * ring[((j - i) % L + L) % L];
}

void SpinWaveDynamics::rates(const MatrixXcd& f, const MatrixXcd& g, MatrixXcd& df,
                             MatrixXcd& dg) const {
  const MatrixXcd fg = f + g;
  const MatrixXcd right = right_multiply(fg, hopping_);  // (f + g) T
  df = I * (left_multiply(hopping_, g.conjugate() + f) - right);
  dg = I * (left_multiply(hopping_, g + f.transpose()) + right + 2.0 * onsite_ * g);
}

void SpinWaveDynamics::step(GaussianState& state, double dt, Integrator integrator) const {
  if (state.size() != hopping_.rows())
    throw Error(ErrorKind::invalid_argument, "state size does not match the chain");
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw Error(ErrorKind::invalid_argument, "time step must be positive");

  MatrixXcd df, dg;
  if (integrator == Integrator::euler) {
    rates(state.f, state.g, df, dg);
    state.f += dt * df;
    state.g += dt * dg;
  } else {
    MatrixXcd k2f, k2g, k3f, k3g, k4f, k4g;
    rates(state.f, state.g, df, dg);
    rates(state.f + 0.5 * dt * df, state.g + 0.5 * dt * dg, k2f, k2g);
    rates(state.f + 0.5 * dt * k2f, state.g + 0.5 * dt * k2g, k3f, k3g);
    rates(state.f + dt * k3f, state.g + dt * k3g, k4f, k4g);
    state.f += dt / 6.0 * (df + 2.0 * k2f + 2.0 * k3f + k4f);
    state.g += dt / 6.0 * (dg + 2.0 * k2g + 2.0 * k3g + k4g);
  }
  state.time += dt;
  require_finite(state.f, "f", state.time);
  require_finite(state.g, "g", state.time);
}

double SpinWaveDynamics::energy(const GaussianState& state) const {
  if (state.size() != hopping_.rows())
    throw Error(ErrorKind::invalid_argument, "state size does not match the chain");
  const MatrixXd pair = (state.f + state.g).real();
  double occupation = 0.0;
  for (int i = 0; i < state.size(); ++i) occupation += state.f(i, i).real() - 0.5;
  return hopping_.cwiseProduct(pair).sum() + onsite_ * occupation + constant_;
}

GaussianState step(const GaussianState& state, double dt, const SpinWaveSetup& setup,
                   Integrator integrator) {
  GaussianState out = state;
  SpinWaveDynamics(setup).step(out, dt, integrator);
  return out;
}

double lswt_energy(const GaussianState& state, const SpinWaveSetup& setup, Boundary boundary) {
  return SpinWaveDynamics(setup, boundary).energy(state);
}

double mode_space_ground_energy(const SpinWaveSetup& setup, const DispersionData& dispersion) {
  double e = 0.0;
  for (int n = 0; n < dispersion.size(); ++n)
    e += 0.5 * (dispersion.omega[n] - dispersion.b_k[n]) + dispersion.a_k[n];
  return e + classical_energy(setup.params, setup.gamma, setup.gamma_tilde_zero);
}

double single_site_entropy(double delta_m) {
  if (std::isnan(delta_m) || delta_m < -1e-9)
    throw Error(ErrorKind::domain_error,
                "single-site entropy undefined for delta m = " + std::to_string(delta_m));
  if (delta_m <= 0.0) return 0.0;
  return (delta_m + 1.0) * std::log1p(delta_m) - delta_m * std::log(delta_m);
}

}  // namespace lrti
