#ifndef MTCHAN_STABLE_HPP_
#define MTCHAN_STABLE_HPP_

// Alpha-stable laws S(mu, c, alpha, beta) in the characteristic-function
// parameterization
//
//   phi(t) = exp[ j mu t - |c t|^alpha (1 - j beta sgn(t) Phi(t, alpha)) ],
//   Phi(t, alpha) = tan(pi alpha / 2)        for alpha != 1,
//                 = -(2 / pi) log|t|         for alpha == 1.
//
// The Levy law (alpha = 1/2, beta = 1) and its mirror image have closed-form
// densities and distribution functions; the Gaussian (alpha = 2) and Cauchy
// (alpha = 1, beta = 0) laws likewise. Everything else goes through the
// Zolotarev integral representation evaluated by adaptive quadrature.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtchan {

/// Invalid stable-law parameters or an unsupported parameter combination.
class StableError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature could not reach the requested accuracy.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double error_bound)
      : std::runtime_error(what), error_bound_(error_bound) {}
  /// Achieved (estimated) absolute error when the integration gave up.
  double error_bound() const noexcept { return error_bound_; }

 private:
  double error_bound_;
};

/// Standard law S(0, 1, alpha, beta).
class StandardStable {
 public:
  StandardStable(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  /// alpha = 1/2, beta = +1: the Levy law.
  bool is_levy() const noexcept { return alpha_ == 0.5 && beta_ == 1.0; }
  /// alpha = 1/2, beta = -1: the mirrored Levy law.
  bool is_mirrored_levy() const noexcept { return alpha_ == 0.5 && beta_ == -1.0; }

  friend bool operator==(const StandardStable&, const StandardStable&) = default;

 private:
  double alpha_;
  double beta_;
};

/// Stable law with location mu and scale c (c = 0 is a point mass and is
/// accepted here, but rejected by pdf/cdf/sample).
class StableParams {
 public:
  StableParams(double mu, double c, double alpha, double beta);

  static StableParams levy(double c, double mu = 0.0) { return {mu, c, 0.5, 1.0}; }

  double mu() const noexcept { return mu_; }
  double c() const noexcept { return c_; }
  double alpha() const noexcept { return standard_.alpha(); }
  double beta() const noexcept { return standard_.beta(); }
  const StandardStable& standard() const noexcept { return standard_; }

  friend bool operator==(const StableParams&, const StableParams&) = default;

 private:
  double mu_;
  double c_;
  StandardStable standard_;
};

std::complex<double> char_fn(const StableParams& params, double t);

// Standardized density and distribution function. Closed forms are used
// where they exist; the general case targets 1e-10 absolute accuracy and
// throws QuadratureError carrying the achieved bound otherwise.
double std_pdf(const StandardStable& s, double x);
double std_cdf(const StandardStable& s, double x);

/// Natural log of std_pdf, exact (no underflow) on the Levy fast path.
double std_log_pdf(const StandardStable& s, double x);

// Zolotarev-integral route with every closed-form shortcut disabled except
// the alpha = 2 and alpha = 1 laws, which the representation does not cover.
double std_pdf_numeric(const StandardStable& s, double x);
double std_cdf_numeric(const StandardStable& s, double x);

double pdf(const StableParams& params, double x);
double cdf(const StableParams& params, double x);

namespace levy {

inline double pdf(double x) {
  if (!(x > 0.0)) return 0.0;
  return std::exp(-0.5 / x) / (std::sqrt(2.0 * std::numbers::pi * x) * x);
}

inline double log_pdf(double x) {
  if (!(x > 0.0)) return -INFINITY;
  return -0.5 * std::log(2.0 * std::numbers::pi) - 1.5 * std::log(x) - 0.5 / x;
}

inline double cdf(double x) {
  if (!(x > 0.0)) return 0.0;
  return std::erfc(std::sqrt(0.5 / x));
}

}  // namespace levy

// Variate generation. Chambers-Mallows-Stuck in general, c / Z^2 for the
// Levy law.
template <class Engine>
double draw_standard(const StandardStable& s, Engine& engine) {
  if (s.is_levy() || s.is_mirrored_levy()) {
    std::normal_distribution<double> normal;
    double z = normal(engine);
    return s.beta() / (z * z);
  }
  constexpr double pi = std::numbers::pi;
  std::uniform_real_distribution<double> uniform(-0.5 * pi, 0.5 * pi);
  std::exponential_distribution<double> exponential(1.0);
  const double v = uniform(engine);
  const double w = exponential(engine);
  const double alpha = s.alpha();
  if (alpha == 1.0) return std::tan(v);
  const double skew = s.beta() * std::tan(0.5 * pi * alpha);
  const double b = std::atan(skew) / alpha;
  const double scale = std::pow(1.0 + skew * skew, 0.5 / alpha);
  return scale * std::sin(alpha * (v + b)) / std::pow(std::cos(v), 1.0 / alpha) *
         std::pow(std::cos(v - alpha * (v + b)) / w, (1.0 - alpha) / alpha);
}

template <class Engine>
double draw(const StableParams& params, Engine& engine) {
  return params.mu() + params.c() * draw_standard(params.standard(), engine);
}

/// n i.i.d. variates, deterministic in seed. n = 0 yields an empty vector.
std::vector<double> sample(const StableParams& params, std::size_t n, std::uint64_t seed);

}  // namespace mtchan

#endif  // MTCHAN_STABLE_HPP_
