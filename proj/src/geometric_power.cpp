#include "mtchan/geometric_power.hpp"

#include <cctype>
#include <cmath>

#include <fmt/format.h>

namespace mtchan {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw StableError(fmt::format("{} = {} must be positive and finite", name, value));
  }
}

// Skewness of the noise each system sees; only C takes it from the caller.
double system_beta(System system, double beta) {
  switch (system) {
    case System::A:
      return 1.0;
    case System::B:
      return 0.0;
    case System::C:
      if (!(beta >= -1.0 && beta <= 1.0)) {
        throw StableError(fmt::format("system C skewness beta = {} outside [-1, 1]", beta));
      }
      return beta;
  }
  return beta;
}

// Input dynamic range: {0, Delta} for A and B, {-Delta, Delta} for C.
double input_range(System system, double delta) { return system == System::C ? 2.0 * delta : delta; }

}  // namespace

std::string_view to_string(System system) {
  switch (system) {
    case System::A:
      return "A";
    case System::B:
      return "B";
    case System::C:
      return "C";
  }
  return "?";
}

std::optional<System> parse_system(std::string_view text) {
  if (text.size() != 1) return std::nullopt;
  switch (std::toupper(static_cast<unsigned char>(text[0]))) {
    case 'A':
      return System::A;
    case 'B':
      return System::B;
    case 'C':
      return System::C;
    default:
      return std::nullopt;
  }
}

ChannelSpec::ChannelSpec(System system, double distance, double diffusion, std::optional<double> diffusion_b)
    : system_(system), distance_(distance), diffusion_(diffusion), diffusion_b_(diffusion_b) {
  require_positive(distance, "distance d");
  require_positive(diffusion, "diffusion coefficient");
  if (diffusion_b) require_positive(*diffusion_b, "diffusion coefficient D_b");
}

ChannelSpec ChannelSpec::system_a(double distance, double diffusion) {
  return {System::A, distance, diffusion, std::nullopt};
}

ChannelSpec ChannelSpec::system_b(double distance, double diffusion) {
  return {System::B, distance, diffusion, std::nullopt};
}

ChannelSpec ChannelSpec::system_c(double distance, double diffusion_a, double diffusion_b) {
  return {System::C, distance, diffusion_a, diffusion_b};
}

double geometric_power(const StableParams& params) {
  if (params.mu() != 0.0) {
    throw StableError(fmt::format("geometric power formula needs mu = 0, got {}", params.mu()));
  }
  const double alpha = params.alpha();
  const double beta = params.beta();
  const double skew = alpha == 1.0 ? 0.0 : beta * std::tan(0.5 * kPi * alpha);
  return params.c() * std::pow(kExpEulerGamma, 1.0 / alpha - 1.0) *
         std::pow(1.0 + skew * skew, 0.5 / alpha);
}

double g_snr(double x_max, double x_min, double s0) {
  if (!(x_max > x_min)) throw StableError(fmt::format("G-SNR needs x_max > x_min ({} vs {})", x_max, x_min));
  require_positive(s0, "geometric noise power");
  const double ratio = (x_max - x_min) / s0;
  return ratio * ratio / (2.0 * kExpEulerGamma);
}

GsnrResult system_gsnr(const GsnrQuery& q) {
  require_positive(q.delta, "symbol separation Delta");
  require_positive(q.c, "noise scale c");
  const StableParams noise(0.0, q.c, 0.5, system_beta(q.system, q.beta));
  return {g_snr(input_range(q.system, q.delta), 0.0, geometric_power(noise)), q.system == System::B};
}

StableParams physics_to_channel(const ChannelSpec& spec) {
  const double d2 = spec.distance() * spec.distance();
  switch (spec.system()) {
    case System::A:
      return {0.0, d2 / (2.0 * spec.diffusion()), 0.5, 1.0};
    case System::B:
      return {0.0, 2.0 * d2 / spec.diffusion(), 0.5, 0.0};
    case System::C: {
      const double da = spec.diffusion();
      const double db = *spec.diffusion_b();
      const double ra = std::sqrt(da);
      const double rb = std::sqrt(db);
      return {0.0, d2 * (ra + rb) * (ra + rb) / (2.0 * da * db), 0.5, (ra - rb) / (ra + rb)};
    }
  }
  throw StableError("unknown system");
}

double scale_for_gsnr(System system, double delta, double gsnr, double beta) {
  require_positive(delta, "symbol separation Delta");
  require_positive(gsnr, "G-SNR");
  // gsnr = (1/(2G)) (range / (c G (1 + b^2)))^2 for the alpha = 1/2 noise.
  const double b = system_beta(system, beta);
  const double unit_power = kExpEulerGamma * (1.0 + b * b);
  return input_range(system, delta) / (unit_power * std::sqrt(2.0 * kExpEulerGamma * gsnr));
}

}  // namespace mtchan
