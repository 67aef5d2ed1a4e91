#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lrti {

// Sites here use symmetric labels -L/2 .. L/2 (L even, L + 1 sites).

int label_to_index(int label, int length);  // -> 0 .. L
int index_to_label(int index, int length);  // -> -L/2 .. L/2

/// P(i,j) = sum_{m != i,j} |i-j|^alpha / (|i-m|^alpha |m-j|^alpha).
/// Throws Error(invalid_pair) for i == j or labels outside the chain.
double p_value(int i, int j, int length, double alpha);

/// sum_{m=1}^{L-1} m^-alpha; bounds P(-L/2, L/2) from below.
double reproducing_lower_bound(int length, double alpha);

struct PairSample {
  int length = 0;
  std::string kind;
  int i = 0;
  int j = 0;
  double p = 0.0;
};

enum class ReproducingVerdict { reproducing_consistent, non_reproducing };

std::string_view to_string(ReproducingVerdict verdict);

struct ReproducingReport {
  double alpha = 0.0;
  std::vector<int> lengths;
  std::vector<double> p_max;        // per length
  std::vector<double> endpoint_p;   // P(-L/2, L/2) per length
  std::vector<double> lower_bound;  // per length
  std::vector<PairSample> samples;
  double fitted_exponent = 0.0;     // d log p_max / d log L
  double endpoint_exponent = 0.0;   // d log P(-L/2, L/2) / d log L
  ReproducingVerdict verdict = ReproducingVerdict::reproducing_consistent;
  bool marginal = false;            // alpha in [0.95, 1.1]
};

/// Samples the endpoint pair, symmetric pairs at separations 2, ~L/4 and
/// L/2, and adjacent pairs at the center and the edge. Needs >= 3 even,
/// increasing lengths. Non-reproducing iff the fitted exponent exceeds 0.05.
ReproducingReport scan_reproducing(double alpha, const std::vector<int>& lengths);

}  // namespace lrti
