#include "mtchan/inversion.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "quadrature.hpp"

namespace mtchan::inversion {

namespace {

constexpr double kPi = std::numbers::pi;
// |phi(t)| = exp(-t^alpha) drops below 1e-16 at t^alpha = 16 ln 10.
constexpr double kCutoff = 36.85;
constexpr double kErrorBudget = 1e-10;

// For alpha < 1 the substitution u = t^alpha removes the t^(alpha-1)
// singularity in the phase derivative at the origin and makes the envelope
// e^{-u}. For alpha >= 1 integrate in t directly.
template <class Integrand>
double integrate_oscillatory(const StandardStable& s, double x, Integrand&& integrand) {
  const double alpha = s.alpha();
  const double skew = alpha == 1.0 ? 0.0 : s.beta() * std::tan(0.5 * kPi * alpha);
  const double upper = alpha < 1.0 ? kCutoff : std::pow(kCutoff, 1.0 / alpha);
  const double t_max = alpha < 1.0 ? std::pow(kCutoff, 1.0 / alpha) : upper;
  const double phase = std::abs(x) * t_max + std::abs(skew) * kCutoff;
  const auto panels = static_cast<std::size_t>(std::max(64.0, std::ceil(phase / kPi)));
  detail::Integral total;
  const double width = upper / static_cast<double>(panels);
  for (std::size_t k = 0; k < panels; ++k) {
    total += detail::integrate(integrand, width * static_cast<double>(k), width * static_cast<double>(k + 1),
                               1e-15, 1e-12, 200);
  }
  if (!(total.error / kPi <= kErrorBudget)) {
    throw QuadratureError(fmt::format("characteristic-function inversion at x = {} did not converge", x),
                          total.error / kPi);
  }
  return total.value / kPi;
}

}  // namespace

double pdf(const StandardStable& s, double x) {
  if (!std::isfinite(x)) throw StableError("inversion at non-finite x");
  const double alpha = s.alpha();
  const double skew = alpha == 1.0 ? 0.0 : s.beta() * std::tan(0.5 * kPi * alpha);
  if (alpha < 1.0) {
    const double p = 1.0 / alpha;
    return integrate_oscillatory(s, x, [&](double u) {
      if (u <= 0.0) return 0.0;
      const double t = std::pow(u, p);
      return p * t / u * std::exp(-u) * std::cos(x * t - skew * u);
    });
  }
  return integrate_oscillatory(s, x, [&](double t) {
    const double ta = std::pow(t, alpha);
    return std::exp(-ta) * std::cos(x * t - skew * ta);
  });
}

double cdf(const StandardStable& s, double x) {
  if (!std::isfinite(x)) throw StableError("inversion at non-finite x");
  const double alpha = s.alpha();
  const double skew = alpha == 1.0 ? 0.0 : s.beta() * std::tan(0.5 * kPi * alpha);
  if (alpha < 1.0) {
    const double p = 1.0 / alpha;
    return 0.5 + integrate_oscillatory(s, x, [&](double u) {
             if (u <= 0.0) return 0.0;
             const double t = std::pow(u, p);
             return p / u * std::exp(-u) * std::sin(x * t - skew * u);
           });
  }
  return 0.5 + integrate_oscillatory(s, x, [&](double t) {
           if (t <= 0.0) return 0.0;
           const double ta = std::pow(t, alpha);
           return std::exp(-ta) * std::sin(x * t - skew * ta) / t;
         });
}

}  // namespace mtchan::inversion
