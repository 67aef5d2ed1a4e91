#pragma once

#include <span>

namespace lrti {

struct LinearFit {
  double slope;
  double intercept;
};

/// Ordinary least squares y = slope * x + intercept. Needs >= 2 distinct x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Slope of log(y) against log(x); all values must be positive.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace lrti
