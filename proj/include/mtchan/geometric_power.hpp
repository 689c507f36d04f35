#ifndef MTCHAN_GEOMETRIC_POWER_HPP_
#define MTCHAN_GEOMETRIC_POWER_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "mtchan/stable.hpp"

namespace mtchan {

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286;
/// exp(kEulerGamma).
inline constexpr double kExpEulerGamma = 1.7810724179901979;

/// The three timing-modulation systems: release time with synchronization (A),
/// gap between two indistinguishable particles (B), signed gap between two
/// distinguishable particles (C).
enum class System { A, B, C };

std::string_view to_string(System system);
/// Accepts "A"/"B"/"C" in either case.
std::optional<System> parse_system(std::string_view text);

/// Physical channel: distance and diffusion coefficient(s). Units are the
/// caller's; the library only needs them to be consistent.
class ChannelSpec {
 public:
  static ChannelSpec system_a(double distance, double diffusion);
  static ChannelSpec system_b(double distance, double diffusion);
  static ChannelSpec system_c(double distance, double diffusion_a, double diffusion_b);

  System system() const noexcept { return system_; }
  double distance() const noexcept { return distance_; }
  /// D for systems A/B, D_a for system C.
  double diffusion() const noexcept { return diffusion_; }
  /// D_b; present only for system C.
  std::optional<double> diffusion_b() const noexcept { return diffusion_b_; }

 private:
  ChannelSpec(System system, double distance, double diffusion, std::optional<double> diffusion_b);

  System system_;
  double distance_;
  double diffusion_;
  std::optional<double> diffusion_b_;
};

/// Symbol separation, noise scale and (system C only) skewness.
struct GsnrQuery {
  System system;
  double delta;
  double c;
  double beta = 0.0;
};

struct GsnrResult {
  double value;
  /// True for system B, whose folded output only admits an upper bound.
  bool upper_bound;
};

/// exp(E[log|N|]) for N ~ S(0, c, alpha, beta). Requires mu = 0.
double geometric_power(const StableParams& params);

/// (1 / (2 G)) ((x_max - x_min) / s0)^2 with G = exp(Euler gamma).
double g_snr(double x_max, double x_min, double s0);

/// G-SNR of the binary scheme described by q, evaluated through
/// geometric_power and g_snr: input range Delta for A/B, 2 Delta for C; noise
/// S(0, c, 1/2, beta) with beta = 1 for A, 0 for B.
GsnrResult system_gsnr(const GsnrQuery& q);

/// Noise law produced by a physical channel.
StableParams physics_to_channel(const ChannelSpec& spec);

/// Noise scale c for which system_gsnr(system, delta, c, beta) == gsnr.
double scale_for_gsnr(System system, double delta, double gsnr, double beta = 0.0);

}  // namespace mtchan

#endif  // MTCHAN_GEOMETRIC_POWER_HPP_
