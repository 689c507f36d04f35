#ifndef MTCHAN_KS_HPP_
#define MTCHAN_KS_HPP_

#include <cstddef>
#include <functional>
#include <vector>

namespace mtchan {

struct KsResult {
  double statistic;  // sup |ECDF - F|
  double p_value;
  std::size_t n;

  bool passes(double significance) const { return p_value >= significance; }
};

// Kolmogorov limiting survival function Q(l) = 2 sum_{k>=1} (-1)^(k-1) e^(-2 k^2 l^2).
double kolmogorov_survival(double lambda);

/// One-sample two-sided KS test of `samples` against `cdf`. CDF evaluations
/// run in parallel; the result does not depend on the thread count. The
/// p-value uses Stephens' finite-n correction of the limiting law.
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace mtchan

#endif  // MTCHAN_KS_HPP_
