#include "mtchan/ks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace mtchan {

double kolmogorov_survival(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-17) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<std::int64_t>(samples.size());
  if (n == 0) return {0.0, 1.0, 0};
  std::vector<double> expected(samples.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t i = 0; i < n; ++i) expected[i] = cdf(samples[i]);

  const double nd = static_cast<double>(n);
  double d = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double below = static_cast<double>(i) / nd;
    const double above = static_cast<double>(i + 1) / nd;
    d = std::max({d, above - expected[i], expected[i] - below});
  }
  const double root = std::sqrt(nd);
  return {d, kolmogorov_survival((root + 0.12 + 0.11 / root) * d), samples.size()};
}

}  // namespace mtchan
