#include "lrti/kernel_sums.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "lrti/error.hpp"

namespace lrti {
namespace {

void check_args(double alpha, int cutoff) {
  if (!(alpha > 0.0))
    throw Error(ErrorKind::invalid_argument, "kernel sums need alpha > 0");
  if (cutoff < 1)
    throw Error(ErrorKind::invalid_argument, "kernel sums need cutoff >= 1");
}

double sign_of(int d) { return d % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

double gamma_tilde(double k, double alpha, int cutoff) {
  check_args(alpha, cutoff);
  double sum = 0.0;
  for (int d = 1; d <= cutoff; ++d) sum += sign_of(d) * std::cos(k * d) * std::pow(d, -alpha);
  return sum;
}

double gamma_tilde_prime(double k, double alpha, int cutoff) {
  check_args(alpha, cutoff);
  double sum = 0.0;
  for (int d = 1; d <= cutoff; ++d) sum -= sign_of(d) * std::sin(k * d) * std::pow(d, 1.0 - alpha);
  return sum;
}

LimitSum gamma_tilde_limit(double k, double alpha) {
  check_args(alpha, 1);
  constexpr double tolerance = 1e-10;
  constexpr int direct = 2000;

  // (-1)^d cos(k d) = Re z^d with z = exp(i (k + pi)).
  double phase = std::remainder(k + std::numbers::pi, 2.0 * std::numbers::pi);
  const bool at_pole = std::abs(phase) < 1e-14;
  if (at_pole && alpha <= 1.0) {
    throw Error(ErrorKind::domain_error,
                "gamma_tilde diverges at k = pi for alpha <= 1 (alpha = " +
                    std::to_string(alpha) + ")");
  }
  if (at_pole) phase = 0.0;

  double head = 0.0;
  for (int d = 1; d <= direct; ++d) head += std::cos(phase * d) * std::pow(d, -alpha);

  // sum_{d>N} z^d d^-alpha = 1/Gamma(alpha) int_0^inf t^(alpha-1) w^(N+1)/(1-w) dt,
  // w = z e^-t.
  const double half_sin = std::sin(0.5 * phase);
  auto integrand = [&](double t) -> double {
    if (t <= 0.0) return 0.0;
    const double decay = std::exp(-t);
    const std::complex<double> numerator =
        std::polar(std::exp(-(direct + 1.0) * t), (direct + 1.0) * phase);
    // 1 - w written to avoid cancellation at small t and phase
    const std::complex<double> one_minus_w(-std::expm1(-t) + 2.0 * decay * half_sin * half_sin,
                                           -decay * std::sin(phase));
    const double re = (numerator / one_minus_w).real() * std::pow(t, alpha - 1.0);
    return std::isfinite(re) ? re : 0.0;
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  const double tail = integrator.integrate(integrand, 1e-13, &error, &l1) / std::tgamma(alpha);
  error /= std::tgamma(alpha);
  if (!std::isfinite(tail) || error > tolerance) {
    throw Error(ErrorKind::numeric_failure,
                "gamma_tilde tail quadrature did not reach 1e-10 (estimate " +
                    std::to_string(error) + ")");
  }
  return {head + tail, error, direct};
}

GridKernelSums gamma_tilde_on_grid(int length, double alpha, int cutoff) {
  check_args(alpha, cutoff);
  if (length < 1) throw Error(ErrorKind::invalid_argument, "grid needs length >= 1");

  const auto n_modes = static_cast<std::size_t>(length);
  // cos/sin of 2 pi j / L, built for j <= L/2 and mirrored so that the tables
  // are exactly even/odd under j -> L - j.
  std::vector<double> cos_table(n_modes), sin_table(n_modes);
  for (int j = 0; 2 * j <= length; ++j) {
    const double angle = 2.0 * std::numbers::pi * j / length;
    cos_table[j] = std::cos(angle);
    sin_table[j] = std::sin(angle);
    if (j > 0 && j < length - j) {
      cos_table[length - j] = cos_table[j];
      sin_table[length - j] = -sin_table[j];
    }
  }
  if (length % 2 == 0) sin_table[length / 2] = 0.0;

  std::vector<double> weight(static_cast<std::size_t>(cutoff) + 1), dweight(weight.size());
  for (int d = 1; d <= cutoff; ++d) {
    weight[d] = sign_of(d) * std::pow(d, -alpha);
    dweight[d] = -sign_of(d) * std::pow(d, 1.0 - alpha);
  }

  GridKernelSums out{std::vector<double>(n_modes), std::vector<double>(n_modes)};
  for (int n = 0; n < length; ++n) {
    double value = 0.0;
    double derivative = 0.0;
    long long phase = 0;
    for (int d = 1; d <= cutoff; ++d) {
      phase += n;
      if (phase >= length) phase %= length;
      value += weight[d] * cos_table[phase];
      derivative += dweight[d] * sin_table[phase];
    }
    out.value[n] = value;
    out.derivative[n] = derivative;
  }
  return out;
}

}  // namespace lrti
