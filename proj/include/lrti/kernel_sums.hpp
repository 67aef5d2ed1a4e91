#pragma once

#include <vector>

namespace lrti {

// Staggered power-law sums carrying all long-range structure of the spin-wave
// dispersion:
//
//   gamma_tilde(k)  =  sum_{d=1}^{cutoff} (-1)^d cos(k d) / d^alpha
//   gamma_tilde'(k) = -sum_{d=1}^{cutoff} (-1)^d sin(k d) / d^(alpha-1)

double gamma_tilde(double k, double alpha, int cutoff);
double gamma_tilde_prime(double k, double alpha, int cutoff);

struct LimitSum {
  double value;
  double error_bound;  // estimated absolute error of the tail evaluation
  int direct_terms;    // terms summed explicitly before the tail
};

/// Infinite-cutoff gamma_tilde. The first terms are summed directly and the
/// remainder is evaluated from its integral representation, with the
/// quadrature error kept below 1e-10. Throws Error(domain_error) where the
/// series diverges (k = pi mod 2 pi with alpha <= 1).
LimitSum gamma_tilde_limit(double k, double alpha);

/// Both sums on the grid k_n = 2 pi n / L. Values at n and L-n are bitwise
/// mirror images (equal for gamma_tilde, opposite for the derivative).
struct GridKernelSums {
  std::vector<double> value;
  std::vector<double> derivative;
};

GridKernelSums gamma_tilde_on_grid(int length, double alpha, int cutoff);

}  // namespace lrti
