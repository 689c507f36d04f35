#ifndef MTCHAN_SRC_QUADRATURE_HPP_
#define MTCHAN_SRC_QUADRATURE_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace mtchan::detail {

struct Integral {
  double value = 0.0;
  double error = 0.0;

  Integral& operator+=(const Integral& other) {
    value += other.value;
    error += other.error;
    return *this;
  }
};

// One 15-point Gauss / 31-point Kronrod panel on [a, b]. Node tables come
// from Boost; the error is |K - G| scaled to the panel width.
template <class F>
Integral kronrod_panel(F& f, double a, double b) {
  using kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
  using gauss = boost::math::quadrature::gauss<double, 15>;
  const auto& x = kronrod::abscissa();
  const auto& wk = kronrod::weights();
  const auto& wg = gauss::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  // 15 is odd, so the centre node belongs to both rules.
  const double fc = f(mid);
  double k = fc * wk[0];
  double g = fc * wg[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double pair = f(mid + half * x[i]) + f(mid - half * x[i]);
    k += pair * wk[i];
    if (i % 2 == 0) g += pair * wg[i / 2];
  }
  const double value = k * half;
  const double err = std::max(std::abs((k - g) * half), 50.0 * std::numeric_limits<double>::epsilon() * std::abs(value));
  return {value, err};
}

// Global adaptive bisection: keep splitting the panel with the largest error
// until the total estimated error is below max(abs_tol, rel_tol * |I|) or the
// panel budget runs out. The caller decides what to do with a large error.
template <class F>
Integral integrate(F&& f, double a, double b, double abs_tol = 1e-14, double rel_tol = 1e-13,
                   std::size_t max_panels = 2000) {
  if (!(b > a)) return {};
  struct Panel {
    double a, b;
    Integral est;
    bool operator<(const Panel& other) const { return est.error < other.est.error; }
  };
  std::priority_queue<Panel> panels;
  Integral total = kronrod_panel(f, a, b);
  panels.push({a, b, total});
  while (panels.size() < max_panels && total.error > std::max(abs_tol, rel_tol * std::abs(total.value))) {
    Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    panels.pop();
    const Integral left = kronrod_panel(f, worst.a, mid);
    const Integral right = kronrod_panel(f, mid, worst.b);
    total.value += left.value + right.value - worst.est.value;
    total.error += left.error + right.error - worst.est.error;
    panels.push({worst.a, mid, left});
    panels.push({mid, worst.b, right});
  }
  // Re-sum to shed accumulated cancellation in the running totals.
  Integral exact;
  while (!panels.empty()) {
    exact += panels.top().est;
    panels.pop();
  }
  return exact;
}

}  // namespace mtchan::detail

#endif  // MTCHAN_SRC_QUADRATURE_HPP_
