#include "mtchan/stable.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "quadrature.hpp"

namespace mtchan {

namespace {

constexpr double kPi = std::numbers::pi;

// Largest estimated absolute error we accept from the Zolotarev quadrature
// before reporting failure. The target is 1e-10; Gauss-Kronrod estimates are
// conservative, so this rarely binds.
constexpr double kErrorBudget = 1e-10;

void require_finite(double x) {
  if (!std::isfinite(x)) throw StableError(fmt::format("stable evaluation at non-finite x = {}", x));
}

// Zolotarev's integral representation for alpha != 1, positive argument, in
// the parameterization above (the shift to Nolan's S0 form cancels out).
//
//   V(theta) = cos(a th0)^(1/(a-1)) (cos th / sin(a (th0 + th)))^(a/(a-1))
//              * cos(a th0 + (a-1) th) / cos th,   theta in (-th0, pi/2)
//   g(theta) = x^(a/(a-1)) V(theta)
//   f(x) = a / (pi |a-1| x) * int g e^-g
//   F(x) = c1 + sgn(1-a) / pi * int e^-g
class Zolotarev {
 public:
  Zolotarev(double alpha, double beta)
      : alpha_(alpha),
        theta0_(std::atan(beta * std::tan(0.5 * kPi * alpha)) / alpha),
        exponent_(alpha / (alpha - 1.0)),
        log_cos_term_(std::log(std::cos(alpha * theta0_)) / (alpha - 1.0)) {}

  double theta0() const { return theta0_; }

  double pdf(double x) const {
    const double log_x = std::log(x);
    auto integrand = [&](double theta) {
      const double lg = log_g(log_x, theta);
      if (std::isnan(lg)) return 0.0;
      return std::exp(lg - std::exp(lg));
    };
    // The 1/x prefactor blows up near the origin; tighten the absolute
    // tolerance so the density itself keeps ~1e-13 accuracy.
    const double factor = alpha_ / (kPi * std::abs(alpha_ - 1.0) * x);
    auto total = integrate_pieces(log_x, integrand, std::min(1e-14, 1e-13 / factor));
    check(total.error * factor, "density", x);
    return std::max(0.0, factor * total.value);
  }

  double cdf(double x) const {
    const double log_x = std::log(x);
    auto integrand = [&](double theta) {
      const double lg = log_g(log_x, theta);
      if (std::isnan(lg)) return 0.0;
      return std::exp(-std::exp(lg));
    };
    auto total = integrate_pieces(log_x, integrand, 1e-14);
    check(total.error / kPi, "distribution function", x);
    const double value = alpha_ < 1.0 ? (0.5 * kPi - theta0_ + total.value) / kPi
                                      : 1.0 - total.value / kPi;
    return std::clamp(value, 0.0, 1.0);
  }

 private:
  double log_g(double log_x, double theta) const {
    const double c = std::cos(theta);
    return exponent_ * log_x + log_cos_term_ +
           exponent_ * (std::log(c) - std::log(std::sin(alpha_ * (theta0_ + theta)))) +
           std::log(std::cos(alpha_ * theta0_ + (alpha_ - 1.0) * theta)) - std::log(c);
  }

  // Split the theta range where log g crosses a few levels so the peak of
  // g e^-g (at g = 1) and the shoulders get their own panels.
  template <class F>
  detail::Integral integrate_pieces(double log_x, F&& integrand, double abs_tol) const {
    const double lo = -theta0_;
    const double hi = 0.5 * kPi;
    detail::Integral total;
    if (!(hi > lo)) return total;

    constexpr std::array<double, 7> levels = {-12.0, -5.0, -2.0, 0.0, 1.5, 3.0, 4.5};
    const bool increasing = alpha_ < 1.0;
    std::array<double, levels.size() + 2> cuts{};
    std::size_t n = 0;
    cuts[n++] = lo;
    for (std::size_t k = 0; k < levels.size(); ++k) {
      const double level = increasing ? levels[k] : levels[levels.size() - 1 - k];
      const double t = crossing(log_x, level, cuts[n - 1], hi, increasing);
      if (t > cuts[n - 1] && t < hi) cuts[n++] = t;
    }
    cuts[n++] = hi;
    for (std::size_t k = 0; k + 1 < n; ++k) total += detail::integrate(integrand, cuts[k], cuts[k + 1], abs_tol);
    return total;
  }

  double crossing(double log_x, double level, double lo, double hi, bool increasing) const {
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      const double lg = log_g(log_x, mid);
      if ((lg < level) == increasing) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }

  static void check(double error, const char* what, double x) {
    if (!(error <= kErrorBudget)) {
      throw QuadratureError(
          fmt::format("stable {} at x = {} did not converge (estimated error {:.3g})", what, x, error),
          error);
    }
  }

  double alpha_;
  double theta0_;
  double exponent_;
  double log_cos_term_;
};

double gaussian_pdf(double x) { return std::exp(-0.25 * x * x) / (2.0 * std::sqrt(kPi)); }
double gaussian_cdf(double x) { return 0.5 * std::erfc(-0.5 * x); }
double cauchy_pdf(double x) { return 1.0 / (kPi * (1.0 + x * x)); }
double cauchy_cdf(double x) { return 0.5 + std::atan(x) / kPi; }

double zolotarev_pdf(const StandardStable& s, double x);

// Inside this radius the integrand collapses onto theta = -theta0 and the
// quadrature loses accuracy; the density is smooth there, so expand to first
// order about the origin instead (remainder ~ f'' x^2 / 2 < 1e-13).
constexpr double kOriginRadius = 1e-7;
constexpr double kOriginStep = 1e-5;

double zolotarev_pdf_near_origin(const StandardStable& s, double x) {
  const double slope =
      (zolotarev_pdf(s, kOriginStep) - zolotarev_pdf(s, -kOriginStep)) / (2.0 * kOriginStep);
  return zolotarev_pdf(s, 0.0) + slope * x;
}

double zolotarev_pdf(const StandardStable& s, double x) {
  if (x != 0.0 && std::abs(x) < kOriginRadius) return zolotarev_pdf_near_origin(s, x);
  if (x == 0.0) {
    const double zeta = -s.beta() * std::tan(0.5 * kPi * s.alpha());
    const double theta0 = std::atan(-zeta) / s.alpha();
    return std::tgamma(1.0 + 1.0 / s.alpha()) * std::cos(theta0) /
           (kPi * std::pow(1.0 + zeta * zeta, 0.5 / s.alpha()));
  }
  if (x > 0.0) return Zolotarev(s.alpha(), s.beta()).pdf(x);
  return Zolotarev(s.alpha(), -s.beta()).pdf(-x);
}

double zolotarev_cdf(const StandardStable& s, double x) {
  if (x == 0.0) {
    const Zolotarev z(s.alpha(), s.beta());
    return (0.5 * kPi - z.theta0()) / kPi;
  }
  if (x > 0.0) return Zolotarev(s.alpha(), s.beta()).cdf(x);
  return 1.0 - Zolotarev(s.alpha(), -s.beta()).cdf(-x);
}

}  // namespace

StandardStable::StandardStable(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw StableError(fmt::format("characteristic exponent alpha = {} outside (0, 2]", alpha));
  }
  if (!(beta >= -1.0 && beta <= 1.0)) {
    throw StableError(fmt::format("skewness beta = {} outside [-1, 1]", beta));
  }
  if (alpha == 1.0 && beta != 0.0) {
    throw StableError("alpha = 1 with beta != 0 is not supported");
  }
  // beta has no effect at alpha = 2; normalize so equal laws compare equal.
  if (alpha == 2.0) beta_ = 0.0;
}

StableParams::StableParams(double mu, double c, double alpha, double beta)
    : mu_(mu), c_(c), standard_(alpha, beta) {
  if (!std::isfinite(mu)) throw StableError(fmt::format("location mu = {} is not finite", mu));
  if (!(c >= 0.0) || !std::isfinite(c)) throw StableError(fmt::format("scale c = {} must be >= 0", c));
}

std::complex<double> char_fn(const StableParams& params, double t) {
  using namespace std::complex_literals;
  if (t == 0.0) return {1.0, 0.0};
  const double alpha = params.alpha();
  const double phi = alpha == 1.0 ? -(2.0 / kPi) * std::log(std::abs(t)) : std::tan(0.5 * kPi * alpha);
  const double sgn = t > 0.0 ? 1.0 : -1.0;
  const double mag = std::pow(std::abs(params.c() * t), alpha);
  return std::exp(1i * params.mu() * t - mag * (1.0 - 1i * params.beta() * sgn * phi));
}

double std_pdf_numeric(const StandardStable& s, double x) {
  require_finite(x);
  if (s.alpha() == 2.0) return gaussian_pdf(x);
  if (s.alpha() == 1.0) return cauchy_pdf(x);
  return zolotarev_pdf(s, x);
}

double std_cdf_numeric(const StandardStable& s, double x) {
  require_finite(x);
  if (s.alpha() == 2.0) return gaussian_cdf(x);
  if (s.alpha() == 1.0) return cauchy_cdf(x);
  return zolotarev_cdf(s, x);
}

double std_pdf(const StandardStable& s, double x) {
  require_finite(x);
  if (s.is_levy()) return levy::pdf(x);
  if (s.is_mirrored_levy()) return levy::pdf(-x);
  return std_pdf_numeric(s, x);
}

double std_cdf(const StandardStable& s, double x) {
  require_finite(x);
  if (s.is_levy()) return levy::cdf(x);
  if (s.is_mirrored_levy()) return x < 0.0 ? std::erf(std::sqrt(-0.5 / x)) : 1.0;
  return std_cdf_numeric(s, x);
}

double std_log_pdf(const StandardStable& s, double x) {
  require_finite(x);
  if (s.is_levy()) return levy::log_pdf(x);
  if (s.is_mirrored_levy()) return levy::log_pdf(-x);
  if (s.alpha() == 2.0) return -0.25 * x * x - std::log(2.0 * std::sqrt(kPi));
  return std::log(std_pdf_numeric(s, x));
}

namespace {
void require_spread(const StableParams& params) {
  if (!(params.c() > 0.0)) {
    throw StableError("scale c = 0 describes a point mass; density and sampling need c > 0");
  }
}
}  // namespace

double pdf(const StableParams& params, double x) {
  require_spread(params);
  return std_pdf(params.standard(), (x - params.mu()) / params.c()) / params.c();
}

double cdf(const StableParams& params, double x) {
  require_spread(params);
  return std_cdf(params.standard(), (x - params.mu()) / params.c());
}

std::vector<double> sample(const StableParams& params, std::size_t n, std::uint64_t seed) {
  std::vector<double> out;
  if (n == 0) return out;
  require_spread(params);
  std::mt19937_64 engine(seed);
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(draw(params, engine));
  return out;
}

}  // namespace mtchan
