#ifndef MTCHAN_SYSTEMS_HPP_
#define MTCHAN_SYSTEMS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "mtchan/geometric_power.hpp"
#include "mtchan/stable.hpp"

namespace mtchan {

/// Both hypotheses assign zero density to an observation (e.g. a negative
/// gap in system B).
class NoSignalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// ML threshold bracket could not be established.
class ThresholdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Equiprobable binary signalling over one of the timing systems. Symbols are
/// {0, Delta} for A and B and {-Delta, Delta} for C; the noise is
/// S(0, c, 1/2, beta) with beta = 1 (A), 0 (B) or beta_C (C).
class BinaryScheme {
 public:
  BinaryScheme(System system, double delta, StableParams noise);

  static BinaryScheme with_scale(System system, double delta, double c, double beta_c = 0.0);
  /// Scheme whose noise scale gives the requested G-SNR (upper bound for B).
  static BinaryScheme at_gsnr(System system, double delta, double gsnr, double beta_c = 0.0);

  System system() const noexcept { return system_; }
  double delta() const noexcept { return delta_; }
  double c() const noexcept { return noise_.c(); }
  double beta() const noexcept { return noise_.beta(); }
  const StableParams& noise() const noexcept { return noise_; }

  /// {lower symbol, upper symbol}.
  std::array<double, 2> alphabet() const noexcept {
    return system_ == System::C ? std::array{-delta_, delta_} : std::array{0.0, delta_};
  }

 private:
  System system_;
  double delta_;
  StableParams noise_;
};

/// Observations y <= threshold decide `below`, larger ones `above`.
struct DetectorState {
  double threshold;
  double below;
  double above;
};

/// Density of the observation y given the transmitted symbol.
double cond_pdf(const BinaryScheme& scheme, double symbol, double y);

/// log f(y | lower symbol) - log f(y | upper symbol); +/-inf where one side
/// has zero density. Throws NoSignalError when both do.
double llr(const BinaryScheme& scheme, double y);

/// Root of the LLR, found by bisection to 1e-12 max(Delta, c).
DetectorState ml_threshold(const BinaryScheme& scheme);

/// Ties go to the lower symbol.
inline double detect(const DetectorState& state, double y) {
  return y <= state.threshold ? state.below : state.above;
}

/// Error probability of the threshold detector at an arbitrary threshold.
double ber_at_threshold(const BinaryScheme& scheme, double threshold);
/// Error probability of the ML detector.
double ber_analytic(const BinaryScheme& scheme);

struct Transmission {
  double sent;
  double observed;
};

/// Draws (symbol, observation) pairs by simulating the particle arrivals:
/// A adds one Levy delay; B folds the difference of two i.i.d. Levy delays of
/// scale c/4; C adds T_b - T_a with Levy scales c (1 +/- beta)^2 / 4.
class ChannelSampler {
 public:
  explicit ChannelSampler(const BinaryScheme& scheme);

  template <class Engine>
  Transmission operator()(Engine& engine) {
    const double sent = (engine() >> 63) != 0 ? high_ : low_;
    if (system_ == System::A) return {sent, sent + levy(scale_a_, engine)};
    const double second = levy(scale_b_, engine);
    const double first = levy(scale_a_, engine);
    if (system_ == System::B) return {sent, std::abs(sent + second - first)};
    return {sent, sent + second - first};
  }

 private:
  template <class Engine>
  double levy(double scale, Engine& engine) {
    if (scale == 0.0) return 0.0;
    const double z = normal_(engine);
    return scale / (z * z);
  }

  System system_;
  double low_;
  double high_;
  double scale_a_;
  double scale_b_;
  std::normal_distribution<double> normal_;
};

/// Monte Carlo bits are drawn in blocks of this size; block k uses the
/// engine seeded with derive_seed(seed, k).
inline constexpr std::size_t kMonteCarloBlock = std::size_t{1} << 16;

std::vector<Transmission> simulate_transmission(const BinaryScheme& scheme, std::size_t n_bits,
                                                std::uint64_t seed);

struct MonteCarloBer {
  double estimate;
  double std_error;
  std::size_t errors;
  std::size_t samples;
};

/// OpenMP over blocks; bit-identical to ber_monte_carlo_serial.
MonteCarloBer ber_monte_carlo(const BinaryScheme& scheme, std::size_t n_bits, std::uint64_t seed);
/// Single-threaded reference implementation.
MonteCarloBer ber_monte_carlo_serial(const BinaryScheme& scheme, std::size_t n_bits, std::uint64_t seed);

/// Smallest n_bits accepted by the Monte Carlo estimators.
inline constexpr std::size_t kMinMonteCarloBits = 10'000;

}  // namespace mtchan

#endif  // MTCHAN_SYSTEMS_HPP_
