#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lrti/error.hpp"
#include "lrti/exact_diag.hpp"
#include "oracles/pauli_dense.hpp"

using namespace lrti;
constexpr double pi = std::numbers::pi;

namespace {

Eigen::VectorXcd random_vector(Eigen::Index dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = {n(rng), n(rng)};
  return v.normalized();
}

EDState state_of(Eigen::VectorXcd v) { return {std::move(v), 0.0}; }

}  // namespace

TEST(EDHamiltonian, TwoSitesByHand) {
  const double theta = 0.7;
  const EDHamiltonian h(ModelParams::make(theta, 2.3, 2));
  const double s = std::sin(theta), c = std::cos(theta);
  // basis |s1 s0>: 0 = dd, 1 = d0 up, 2 = d1 up, 3 = uu
  Eigen::Matrix4d expected;
  expected << -2 * c, 0, 0, s,
              0, 0, s, 0,
              0, s, 0, 0,
              s, 0, 0, 2 * c;
  EXPECT_LT((h.dense() - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(EDHamiltonian, MatchesKroneckerOracle) {
  for (double alpha : {0.5, 3.0}) {
    const EDHamiltonian h(ModelParams::make(pi / 5, alpha, 6));
    EXPECT_LT((h.dense() - oracle::hamiltonian(pi / 5, alpha, 6)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(EDHamiltonian, Hermitian) {
  const EDHamiltonian h(ModelParams::make(0.4, 1.2, 10));
  const auto a = random_vector(h.dimension(), 1);
  const auto b = random_vector(h.dimension(), 2);
  EXPECT_LT(std::abs(a.dot(h.apply(b)) - h.apply(a).dot(b)), 1e-12);
}

TEST(EDHamiltonian, SizeCap) {
  try {
    EDHamiltonian h(ModelParams::make(0.3, 3.0, 15));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::size_cap);
  }
}

TEST(EDGroundState, PureFieldIsAllDown) {
  for (int L : {4, 9}) {
    const EDHamiltonian h(ModelParams::make(0.0, 3.0, L));
    const auto gs = ground_state(h);
    EXPECT_NEAR(gs.energy, -L, 1e-12);
    EXPECT_NEAR(std::abs(gs.state.amplitudes(0)), 1.0, 1e-10);
    for (double dm : ed_magnetization(gs.state, L)) EXPECT_LT(dm, 1e-12);
  }
}

TEST(EDGroundState, TwoSiteClosedForm) {
  const double theta = pi / 5;
  const double s = std::sin(theta), c = std::cos(theta);
  const auto gs = ground_state(EDHamiltonian(ModelParams::make(theta, 1.7, 2)));
  const double e = -std::sqrt(4 * c * c + s * s);
  EXPECT_NEAR(gs.energy, e, 1e-13);
  // eigenvector of [[-2c, s], [s, 2c]] in the {dd, uu} block
  const double norm = std::hypot(s, e + 2 * c);
  EXPECT_NEAR(gs.state.amplitudes(0).real(), std::abs(s) / norm, 1e-12);
  EXPECT_NEAR(std::abs(gs.state.amplitudes(3)), std::abs(e + 2 * c) / norm, 1e-12);
  EXPECT_NEAR(std::abs(gs.state.amplitudes(1)), 0.0, 1e-12);
}

TEST(EDGroundState, MatchesDenseEigensolver) {
  for (int L : {8, 10}) {
    const EDHamiltonian h(ModelParams::make(pi / 5, 3.0, L));
    const auto gs = ground_state(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(oracle::hamiltonian(pi / 5, 3.0, L));
    EXPECT_NEAR(gs.energy, eig.eigenvalues()(0), 1e-9) << L;
    EXPECT_LT(gs.residual, 1e-10);
    EXPECT_NEAR(gs.gap, eig.eigenvalues()(1) - eig.eigenvalues()(0), 1e-6);
    EXPECT_FALSE(gs.degenerate);
    EXPECT_NEAR(gs.state.amplitudes.norm(), 1.0, 1e-12);
  }
}

TEST(EDGroundState, StronglyPolarized) {
  const auto gs = ground_state(EDHamiltonian(ModelParams::make(pi / 20, 3.0, 10)));
  for (double dm : ed_magnetization(gs.state, 10)) EXPECT_LT(dm, 0.05);  // <Sz> within 0.05 of -1/2
}

TEST(EDGroundState, DeterministicTieBreak) {
  const EDHamiltonian h(ModelParams::make(pi / 5, 1.0, 11));
  const auto a = ground_state(h);
  const auto b = ground_state(h);
  EXPECT_EQ((a.state.amplitudes - b.state.amplitudes).norm(), 0.0);
  Eigen::Index idx;
  a.state.amplitudes.cwiseAbs().maxCoeff(&idx);
  EXPECT_GT(a.state.amplitudes(idx).real(), 0.0);
}

TEST(EDGroundState, DegenerateNeelRegimeIsFlagged) {
  // Deep in the ordered phase the two symmetry-broken states are nearly degenerate.
  const auto gs = ground_state(EDHamiltonian(ModelParams::make(0.5 * pi, 3.0, 8)));
  EXPECT_TRUE(gs.degenerate);
  EXPECT_LT(gs.residual, 1e-10);
}

TEST(SigmaX, FlipsOneSite) {
  const int L = 5;
  Eigen::VectorXcd down = Eigen::VectorXcd::Zero(32);
  down(0) = 1.0;
  const auto flipped = apply_sigma_x(state_of(down), 3);
  EXPECT_EQ(flipped.amplitudes(8), std::complex<double>(1.0));
  const auto dm = ed_magnetization(flipped, L);
  for (int i = 0; i < L; ++i) EXPECT_EQ(dm[i], i == 3 ? 1.0 : 0.0);

  const auto v = state_of(random_vector(32, 5));
  EXPECT_EQ((apply_sigma_x(apply_sigma_x(v, 2), 2).amplitudes - v.amplitudes).norm(), 0.0);
  EXPECT_EQ(apply_sigma_x(v, 2).amplitudes.norm(), v.amplitudes.norm());
  EXPECT_THROW(apply_sigma_x(v, 5), Error);
}

TEST(SigmaX, OverlapIsExpectationValue) {
  const int L = 8;
  const auto gs = ground_state(EDHamiltonian(ModelParams::make(pi / 5, 3.0, L)));
  const auto q = apply_sigma_x(gs.state, 4);
  const Eigen::MatrixXd sx = oracle::site_operator(oracle::sigma_x(), 4, L);
  const auto direct = gs.state.amplitudes.dot(sx.cast<std::complex<double>>() * gs.state.amplitudes);
  EXPECT_NEAR(std::abs(gs.state.amplitudes.dot(q.amplitudes) - direct), 0.0, 1e-12);
}

TEST(Evolve, EigenstateIsStationary) {
  const EDHamiltonian h(ModelParams::make(pi / 5, 1.5, 9));
  const auto gs = ground_state(h);
  const auto later = evolve(gs.state, h, 3.0);
  EXPECT_NEAR(std::abs(gs.state.amplitudes.dot(later.amplitudes)), 1.0, 1e-9);
  const auto a = ed_magnetization(gs.state, 9), b = ed_magnetization(later, 9);
  for (int i = 0; i < 9; ++i) EXPECT_NEAR(a[i], b[i], 1e-9);
  EXPECT_NEAR(entanglement(later, 9, 4).entropy, entanglement(gs.state, 9, 4).entropy, 1e-9);
  EXPECT_DOUBLE_EQ(later.time, 3.0);
}

TEST(Evolve, UnitarityAndEnergy) {
  const EDHamiltonian h(ModelParams::make(pi / 5, 0.8, 10));
  const auto psi = state_of(random_vector(h.dimension(), 9));
  const double e0 = h.expectation(psi.amplitudes);
  auto cur = psi;
  for (int n = 0; n < 8; ++n) {
    cur = evolve(cur, h, 1.0);
    EXPECT_NEAR(cur.amplitudes.norm(), 1.0, 1e-10);
    EXPECT_NEAR(h.expectation(cur.amplitudes), e0, 1e-8);
  }
}

TEST(Evolve, KrylovMatchesEigendecomposition) {
  const EDHamiltonian h(ModelParams::make(pi / 5, 3.0, 8));
  const auto gs = ground_state(h);
  const auto psi = apply_sigma_x(gs.state, 4);
  const auto krylov = evolve(psi, h, 2.0, Propagation::krylov);
  const auto spectral = evolve(psi, h, 2.0, Propagation::spectral);
  EXPECT_LT((krylov.amplitudes - spectral.amplitudes).norm(), 1e-8);
  const auto dense = oracle::hamiltonian(pi / 5, 3.0, 8);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense);
  const Eigen::MatrixXcd v = eig.eigenvectors().cast<std::complex<double>>();
  Eigen::VectorXcd c = v.adjoint() * psi.amplitudes;
  for (Eigen::Index n = 0; n < c.size(); ++n) c(n) *= std::polar(1.0, -2.0 * eig.eigenvalues()(n));
  EXPECT_LT((krylov.amplitudes - v * c).norm(), 1e-8);
}

TEST(Evolve, RejectsNegativeTime) {
  const EDHamiltonian h(ModelParams::make(pi / 5, 3.0, 4));
  EXPECT_THROW(evolve(state_of(random_vector(16, 1)), h, -1.0), Error);
}

TEST(Entanglement, ProductState) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(64);
  v(37) = 1.0;
  for (int l = 1; l < 6; ++l) {
    const auto e = entanglement(state_of(v), 6, l);
    EXPECT_NEAR(e.spectrum[0], 1.0, 1e-15);
    EXPECT_EQ(e.entropy, 0.0);
  }
}

TEST(Entanglement, BellPairAcrossTheCut) {
  // (|..01..> + |..10..>)/sqrt 2 on sites 1 and 2 of a four-site chain, cut at l = 2.
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
  v(0b0010) = v(0b0100) = 1.0 / std::sqrt(2.0);
  const auto e = entanglement(state_of(v), 4, 2);
  EXPECT_NEAR(e.spectrum[0], 0.5, 1e-15);
  EXPECT_NEAR(e.spectrum[1], 0.5, 1e-15);
  EXPECT_NEAR(e.entropy, std::log(2.0), 1e-14);
  EXPECT_NEAR(entanglement(state_of(v), 4, 1).entropy, 0.0, 1e-14);
}

TEST(Entanglement, ComplementaryBlocksAndNormalization) {
  const int L = 9;
  const auto psi = state_of(random_vector(512, 3));
  // Reversing the site order turns the leading L-l block into the complement.
  EDState mirrored = psi;
  for (Eigen::Index s = 0; s < 512; ++s) {
    Eigen::Index r = 0;
    for (int b = 0; b < L; ++b) r |= ((s >> b) & 1) << (L - 1 - b);
    mirrored.amplitudes[r] = psi.amplitudes[s];
  }
  for (int l = 1; l < L; ++l) {
    const auto a = entanglement(psi, L, l);
    const auto b = entanglement(mirrored, L, L - l);
    EXPECT_NEAR(a.entropy, b.entropy, 1e-10);
    double sum = 0.0;
    for (double p : a.spectrum) {
      EXPECT_GE(p, -1e-12);
      EXPECT_LE(p, 1.0 + 1e-12);
      sum += p;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
    EXPECT_TRUE(std::is_sorted(a.spectrum.rbegin(), a.spectrum.rend()));
  }
  EXPECT_THROW(entanglement(psi, L, 0), Error);
  EXPECT_THROW(entanglement(psi, L, L), Error);
}

TEST(Trajectory, PureFieldHasNoEntanglementGrowth) {
  const auto traj = quench_trajectory(ModelParams::make(0.0, 1.0, 8), 2.0, 0.5);
  ASSERT_EQ(traj.samples.size(), 5u);
  for (const auto& s : traj.samples) {
    for (const auto& c : s.cuts) EXPECT_NEAR(c.entropy - traj.initial_entropy[c.block_size - 1], 0.0, 1e-12);
    for (int i = 0; i < 8; ++i) EXPECT_NEAR(s.delta_m[i], i == 3 ? 1.0 : 0.0, 1e-12);
  }
}

TEST(Trajectory, ReflectionSymmetryForCenterQuench) {
  const int L = 9;
  const auto traj = quench_trajectory(ModelParams::make(pi / 5, 1.5, L), 3.0, 0.5);
  for (const auto& s : traj.samples) {
    for (int i = 0; i < L; ++i) EXPECT_NEAR(s.delta_m[i], s.delta_m[L - 1 - i], 1e-9);
    for (int l = 1; l < L; ++l)
      EXPECT_NEAR(s.cuts[l - 1].entropy, s.cuts[L - l - 1].entropy, 1e-9);
    EXPECT_NEAR(s.norm, 1.0, 1e-10);
    EXPECT_NEAR(s.energy, traj.samples.front().energy, 1e-8);
  }
}

TEST(Trajectory, SpectralRouteAgrees) {
  const auto p = ModelParams::make(pi / 5, 3.0, 8);
  const auto a = quench_trajectory(p, 2.0, 1.0, Propagation::krylov);
  const auto b = quench_trajectory(p, 2.0, 1.0, Propagation::spectral);
  for (std::size_t n = 0; n < a.samples.size(); ++n)
    for (int i = 0; i < 8; ++i) EXPECT_NEAR(a.samples[n].delta_m[i], b.samples[n].delta_m[i], 1e-9);
}
