#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace lrti {

/// Physical configuration of the long-range transverse Ising chain
///
///   H = sin(theta) sum_{i<j} sx_i sx_j / |i-j|^alpha + cos(theta) sum_i sz_i
///
/// on an open chain of `length` sites. Sites are 0-indexed.
struct ModelParams {
  static constexpr double spin = 0.5;

  double theta = 0.0;
  double alpha = 3.0;
  int length = 2;
  int quench_site = 0;

  /// Builds parameters with the quench site at the center-left site.
  static ModelParams make(double theta, double alpha, int length);
};

/// ceil(L/2) - 1; the exact center when L is odd.
int default_quench_site(int length);

enum class ParamViolation {
  alpha_nonpositive,
  theta_out_of_range,
  length_too_small,
  quench_site_out_of_range,
};

std::string_view to_string(ParamViolation v);

/// Empty result means the parameters are valid.
std::vector<ParamViolation> validate(const ModelParams& params);

/// Throws Error(invalid_params) listing every violation.
void require_valid(const ModelParams& params);

/// 1/distance^alpha for distance >= 1.
double power_law_kernel(int distance, double alpha);

/// Kernel 1/|i-j|^alpha between two distinct in-range sites; prefactors are
/// applied by the engines. Throws Error(invalid_pair) otherwise.
double coupling(int i, int j, const ModelParams& params);

/// Prefactors of the Hamiltonian rewritten with spin operators S = sigma/2:
///
///   H = exchange * sum_{i<j} Sx_i Sx_j / |i-j|^alpha + field * sum_i Sz_i
///
/// i.e. exchange = 4 sin(theta) and field = 2 cos(theta). The exact engine
/// works with Pauli matrices and the spin-wave engine with spin operators;
/// both derive their prefactors from here so energies and times agree.
struct SpinCouplings {
  double exchange;
  double field;
};

SpinCouplings spin_couplings(double theta);

/// Periodic momentum grid k_n = 2 pi n / L, n = 0..L-1.
///
/// The chain itself is open; the grid is only used to build translation
/// invariant spin-wave correlators.
class MomentumGrid {
 public:
  explicit MomentumGrid(int length);

  int size() const noexcept { return length_; }
  double spacing() const noexcept;
  double operator[](int n) const;
  const std::vector<double>& modes() const noexcept { return modes_; }

  /// Index of k = pi, or -1 when L is odd.
  int pi_index() const noexcept;
  bool contains_pi() const noexcept { return pi_index() >= 0; }

  /// Index of -k_n folded back to [0, L).
  int mirror(int n) const noexcept { return n == 0 ? 0 : length_ - n; }

 private:
  int length_;
  std::vector<double> modes_;
};

}  // namespace lrti
