#include "lrti/reproducing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "lrti/error.hpp"
#include "lrti/fit.hpp"

namespace lrti {
namespace {

void require_even_length(int length) {
  if (length < 2 || length % 2 != 0)
    throw Error(ErrorKind::invalid_argument, "symmetric labels need an even length >= 2");
}

void require_label(int label, int length) {
  if (std::abs(label) > length / 2)
    throw Error(ErrorKind::invalid_pair,
                "label " + std::to_string(label) + " outside [-L/2, L/2]");
}

}  // namespace

int label_to_index(int label, int length) {
  require_even_length(length);
  require_label(label, length);
  return label + length / 2;
}

int index_to_label(int index, int length) {
  require_even_length(length);
  if (index < 0 || index > length)
    throw Error(ErrorKind::invalid_pair, "index " + std::to_string(index) + " outside [0, L]");
  return index - length / 2;
}

double p_value(int i, int j, int length, double alpha) {
  require_even_length(length);
  require_label(i, length);
  require_label(j, length);
  if (i == j) throw Error(ErrorKind::invalid_pair, "P(i,j) needs i != j");
  if (!(alpha > 0.0)) throw Error(ErrorKind::invalid_argument, "alpha must be positive");
  const double numerator = std::pow(std::abs(i - j), alpha);
  double sum = 0.0;
  for (int m = -length / 2; m <= length / 2; ++m) {
    if (m == i || m == j) continue;
    sum += numerator / std::pow(static_cast<double>(std::abs(i - m)) * std::abs(m - j), alpha);
  }
  return sum;
}

double reproducing_lower_bound(int length, double alpha) {
  double sum = 0.0;
  for (int m = 1; m < length; ++m) sum += std::pow(m, -alpha);
  return sum;
}

std::string_view to_string(ReproducingVerdict verdict) {
  return verdict == ReproducingVerdict::non_reproducing ? "non-reproducing"
                                                        : "reproducing-consistent";
}

ReproducingReport scan_reproducing(double alpha, const std::vector<int>& lengths) {
  if (lengths.size() < 3)
    throw Error(ErrorKind::invalid_argument, "reproducing scan needs at least 3 lengths");
  for (std::size_t n = 0; n < lengths.size(); ++n) {
    require_even_length(lengths[n]);
    if (lengths[n] < 4) throw Error(ErrorKind::invalid_argument, "lengths must be >= 4");
    if (n > 0 && lengths[n] <= lengths[n - 1])
      throw Error(ErrorKind::invalid_argument, "lengths must increase");
  }

  ReproducingReport r;
  r.alpha = alpha;
  r.lengths = lengths;
  r.marginal = alpha >= 0.95 && alpha <= 1.1;
  for (int L : lengths) {
    const int half = L / 2;
    const int quarter = 2 * static_cast<int>(std::lround(L / 8.0));
    struct Pair {
      const char* kind;
      int i, j;
    };
    std::vector<Pair> pairs = {
        {"endpoint", -half, half},
        {"symmetric-2", -1, 1},
        {"symmetric-quarter", -std::max(quarter, 2) / 2, std::max(quarter, 2) / 2},
        {"symmetric-half", -half / 2, half - half / 2},
        {"adjacent-center", 0, 1},
        {"adjacent-edge", half - 1, half},
    };
    double p_max = 0.0;
    for (const auto& pair : pairs) {
      const double p = p_value(pair.i, pair.j, L, alpha);
      r.samples.push_back({L, pair.kind, pair.i, pair.j, p});
      p_max = std::max(p_max, p);
      if (pair.kind == std::string_view("endpoint")) r.endpoint_p.push_back(p);
    }
    r.p_max.push_back(p_max);
    r.lower_bound.push_back(reproducing_lower_bound(L, alpha));
  }

  std::vector<double> ls(lengths.begin(), lengths.end());
  r.fitted_exponent = loglog_slope(ls, r.p_max);
  r.endpoint_exponent = loglog_slope(ls, r.endpoint_p);
  r.verdict = r.fitted_exponent > 0.05 ? ReproducingVerdict::non_reproducing
                                       : ReproducingVerdict::reproducing_consistent;
  return r;
}

}  // namespace lrti
