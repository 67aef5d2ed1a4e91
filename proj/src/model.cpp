#include "lrti/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "lrti/error.hpp"

namespace lrti {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::invalid_pair: return "invalid-pair";
    case ErrorKind::invalid_params: return "invalid-params";
    case ErrorKind::numeric_failure: return "numeric-failure";
    case ErrorKind::spin_wave_instability: return "spin-wave-instability";
    case ErrorKind::gapless_mode: return "gapless-mode";
    case ErrorKind::degenerate_quench: return "degenerate-quench";
    case ErrorKind::size_cap: return "size-cap";
    case ErrorKind::domain_error: return "domain-error";
  }
  return "unknown";
}

int default_quench_site(int length) { return (length + 1) / 2 - 1; }

ModelParams ModelParams::make(double theta, double alpha, int length) {
  ModelParams p;
  p.theta = theta;
  p.alpha = alpha;
  p.length = length;
  p.quench_site = default_quench_site(length);
  return p;
}

std::string_view to_string(ParamViolation v) {
  switch (v) {
    case ParamViolation::alpha_nonpositive: return "alpha-nonpositive";
    case ParamViolation::theta_out_of_range: return "theta-out-of-range";
    case ParamViolation::length_too_small: return "length-too-small";
    case ParamViolation::quench_site_out_of_range: return "quench-site-out-of-range";
  }
  return "unknown";
}

std::vector<ParamViolation> validate(const ModelParams& params) {
  std::vector<ParamViolation> out;
  if (!(params.alpha > 0.0)) out.push_back(ParamViolation::alpha_nonpositive);
  if (!(params.theta >= 0.0 && params.theta <= std::numbers::pi / 2))
    out.push_back(ParamViolation::theta_out_of_range);
  if (params.length < 2) out.push_back(ParamViolation::length_too_small);
  if (params.quench_site < 0 || params.quench_site >= params.length)
    out.push_back(ParamViolation::quench_site_out_of_range);
  return out;
}

void require_valid(const ModelParams& params) {
  const auto violations = validate(params);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid model parameters:";
  for (auto v : violations) msg << ' ' << to_string(v);
  throw Error(ErrorKind::invalid_params, msg.str());
}

double power_law_kernel(int distance, double alpha) {
  return std::pow(static_cast<double>(distance), -alpha);
}

double coupling(int i, int j, const ModelParams& params) {
  if (i == j || i < 0 || j < 0 || i >= params.length || j >= params.length) {
    throw Error(ErrorKind::invalid_pair,
                "coupling requires two distinct sites in [0, " +
                    std::to_string(params.length) + "), got (" +
                    std::to_string(i) + ", " + std::to_string(j) + ")");
  }
  return power_law_kernel(std::abs(i - j), params.alpha);
}

SpinCouplings spin_couplings(double theta) {
  // sigma = 2 S: a pair term picks up 2*2, a single-site term 2.
  return {4.0 * std::sin(theta), 2.0 * std::cos(theta)};
}

MomentumGrid::MomentumGrid(int length) : length_(length) {
  if (length < 1)
    throw Error(ErrorKind::invalid_argument, "momentum grid needs at least one mode");
  modes_.resize(static_cast<std::size_t>(length));
  for (int n = 0; n < length; ++n) modes_[n] = 2.0 * std::numbers::pi * n / length;
}

double MomentumGrid::spacing() const noexcept { return 2.0 * std::numbers::pi / length_; }

double MomentumGrid::operator[](int n) const { return modes_.at(static_cast<std::size_t>(n)); }

int MomentumGrid::pi_index() const noexcept { return length_ % 2 == 0 ? length_ / 2 : -1; }

}  // namespace lrti
