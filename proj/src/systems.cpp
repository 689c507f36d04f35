#include "mtchan/systems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "mtchan/seeding.hpp"

namespace mtchan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxBracketDoublings = 60;

double required_beta(System system, double beta_c) {
  switch (system) {
    case System::A:
      return 1.0;
    case System::B:
      return 0.0;
    case System::C:
      return beta_c;
  }
  return beta_c;
}

// Sign of f(y | low) - f(y | high): +1, -1, or 0 for a tie (including both
// densities being zero). Works in log space where that avoids underflow.
int density_order(const BinaryScheme& scheme, double y) {
  const double c = scheme.c();
  const double delta = scheme.delta();
  const StandardStable& law = scheme.noise().standard();
  double low = 0.0;
  double high = 0.0;
  switch (scheme.system()) {
    case System::A:
      low = levy::log_pdf(y / c);
      high = levy::log_pdf((y - delta) / c);
      break;
    case System::B:
      if (y < 0.0) return 0;
      low = 2.0 * std_pdf(law, y / c);
      high = std_pdf(law, (y - delta) / c) + std_pdf(law, (y + delta) / c);
      break;
    case System::C:
      low = std_log_pdf(law, (y + delta) / c);
      high = std_log_pdf(law, (y - delta) / c);
      break;
  }
  if (low > high) return 1;
  if (low < high) return -1;
  return 0;
}

double bisect(const BinaryScheme& scheme, double lo, double hi) {
  const double tol = 1e-12 * std::max(scheme.delta(), scheme.c());
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (density_order(scheme, mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Walk away from `start` in steps (c + Delta) 2^k until the density order
// flips to `want`.
double expand(const BinaryScheme& scheme, double start, double direction, int want) {
  double step = scheme.c() + scheme.delta();
  for (int k = 0; k < kMaxBracketDoublings; ++k, step *= 2.0) {
    const double y = start + direction * step;
    const int order = density_order(scheme, y);
    if (want > 0 ? order > 0 : order <= 0) return y;
  }
  throw ThresholdError(fmt::format("no ML threshold bracket for system {} (Delta = {}, c = {}, beta = {})",
                                   to_string(scheme.system()), scheme.delta(), scheme.c(), scheme.beta()));
}

}  // namespace

BinaryScheme::BinaryScheme(System system, double delta, StableParams noise)
    : system_(system), delta_(delta), noise_(noise) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw StableError(fmt::format("symbol separation Delta = {} must be positive", delta));
  }
  if (noise.mu() != 0.0 || noise.alpha() != 0.5) {
    throw StableError("timing-channel noise must be S(0, c, 1/2, beta)");
  }
  if (!(noise.c() > 0.0)) throw StableError("timing-channel noise needs c > 0");
  if (system == System::A && noise.beta() != 1.0) throw StableError("system A noise must have beta = 1");
  if (system == System::B && noise.beta() != 0.0) throw StableError("system B noise must have beta = 0");
}

BinaryScheme BinaryScheme::with_scale(System system, double delta, double c, double beta_c) {
  return {system, delta, StableParams(0.0, c, 0.5, required_beta(system, beta_c))};
}

BinaryScheme BinaryScheme::at_gsnr(System system, double delta, double gsnr, double beta_c) {
  return with_scale(system, delta, scale_for_gsnr(system, delta, gsnr, beta_c), beta_c);
}

double cond_pdf(const BinaryScheme& scheme, double symbol, double y) {
  const auto alphabet = scheme.alphabet();
  if (symbol != alphabet[0] && symbol != alphabet[1]) {
    throw StableError(fmt::format("symbol {} is not in the alphabet of system {}", symbol,
                                  to_string(scheme.system())));
  }
  const double c = scheme.c();
  const StandardStable& law = scheme.noise().standard();
  switch (scheme.system()) {
    case System::A:
      return levy::pdf((y - symbol) / c) / c;
    case System::B:
      if (y < 0.0) return 0.0;
      // The folded density jumps from 0 to its right limit at y = 0; report
      // the midpoint, f(symbol / c) / c. Both hypotheses halve, so the LLR
      // is unaffected.
      if (y == 0.0) return std_pdf(law, symbol / c) / c;
      return (std_pdf(law, (y - symbol) / c) + std_pdf(law, (-y - symbol) / c)) / c;
    case System::C:
      return std_pdf(law, (y - symbol) / c) / c;
  }
  return 0.0;
}

double llr(const BinaryScheme& scheme, double y) {
  const auto alphabet = scheme.alphabet();
  if (scheme.system() == System::A) {
    const double low = levy::log_pdf(y / scheme.c());
    const double high = levy::log_pdf((y - alphabet[1]) / scheme.c());
    if (low == -kInf && high == -kInf) throw NoSignalError(fmt::format("y = {} is impossible in system A", y));
    return low - high;
  }
  const double low = cond_pdf(scheme, alphabet[0], y);
  const double high = cond_pdf(scheme, alphabet[1], y);
  if (low == 0.0 && high == 0.0) {
    throw NoSignalError(fmt::format("y = {} has zero density under both symbols", y));
  }
  if (high == 0.0) return kInf;
  if (low == 0.0) return -kInf;
  return std::log(low) - std::log(high);
}

DetectorState ml_threshold(const BinaryScheme& scheme) {
  const auto alphabet = scheme.alphabet();
  const double delta = scheme.delta();
  const double c = scheme.c();
  double threshold = 0.0;
  switch (scheme.system()) {
    case System::A:
      // f(.|Delta) vanishes at Delta and peaks at Delta + c/3, where it
      // exceeds f(.|0); the crossing lies in between.
      threshold = bisect(scheme, delta, delta + c / 3.0);
      break;
    case System::B:
      threshold = bisect(scheme, 0.5 * delta, expand(scheme, 0.5 * delta, 1.0, -1));
      break;
    case System::C: {
      if (scheme.beta() == 0.0) break;
      const int at_zero = density_order(scheme, 0.0);
      if (at_zero > 0) {
        threshold = bisect(scheme, 0.0, expand(scheme, 0.0, 1.0, -1));
      } else if (at_zero < 0) {
        threshold = bisect(scheme, expand(scheme, 0.0, -1.0, 1), 0.0);
      }
      break;
    }
  }
  return {threshold, alphabet[0], alphabet[1]};
}

double ber_at_threshold(const BinaryScheme& scheme, double threshold) {
  const double c = scheme.c();
  const double delta = scheme.delta();
  const double th = threshold;
  const StandardStable& law = scheme.noise().standard();
  double ber = 0.0;
  switch (scheme.system()) {
    case System::A:
      ber = 0.5 * (1.0 - levy::cdf(th / c) + levy::cdf((th - delta) / c));
      break;
    case System::B:
      // 0.5 [P(L > th) + P(L <= -th)] + 0.5 P(-th - Delta <= L <= th - Delta)
      // with the symmetric law folded onto F(th) and F(th +/- Delta).
      ber = 0.5 - std_cdf(law, th / c) + 0.5 * std_cdf(law, (th - delta) / c) +
            0.5 * std_cdf(law, (th + delta) / c);
      break;
    case System::C:
      ber = 0.5 * (1.0 - std_cdf(law, (th + delta) / c) + std_cdf(law, (th - delta) / c));
      break;
  }
  // Rounding can push the indistinguishable-symbol limit a hair past 1/2.
  return std::clamp(ber, 0.0, 0.5);
}

double ber_analytic(const BinaryScheme& scheme) {
  return ber_at_threshold(scheme, ml_threshold(scheme).threshold);
}

ChannelSampler::ChannelSampler(const BinaryScheme& scheme)
    : system_(scheme.system()), low_(scheme.alphabet()[0]), high_(scheme.alphabet()[1]) {
  const double c = scheme.c();
  const double beta = scheme.beta();
  switch (system_) {
    case System::A:
      scale_a_ = c;
      scale_b_ = 0.0;
      break;
    case System::B:
      scale_a_ = scale_b_ = 0.25 * c;
      break;
    case System::C:
      scale_a_ = 0.25 * c * (1.0 - beta) * (1.0 - beta);
      scale_b_ = 0.25 * c * (1.0 + beta) * (1.0 + beta);
      break;
  }
}

namespace {

std::size_t block_count(std::size_t n_bits) { return (n_bits + kMonteCarloBlock - 1) / kMonteCarloBlock; }

std::size_t block_errors(const BinaryScheme& scheme, const DetectorState& state, std::size_t n_bits,
                         std::uint64_t seed, std::size_t block) {
  std::mt19937_64 engine(derive_seed(seed, block));
  ChannelSampler sampler(scheme);
  const std::size_t begin = block * kMonteCarloBlock;
  const std::size_t end = std::min(n_bits, begin + kMonteCarloBlock);
  std::size_t errors = 0;
  for (std::size_t i = begin; i < end; ++i) {
    const Transmission t = sampler(engine);
    errors += detect(state, t.observed) != t.sent;
  }
  return errors;
}

MonteCarloBer summarize(std::size_t errors, std::size_t n_bits) {
  const double n = static_cast<double>(n_bits);
  const double p = static_cast<double>(errors) / n;
  return {p, std::sqrt(p * (1.0 - p) / n), errors, n_bits};
}

void require_bits(std::size_t n_bits) {
  if (n_bits < kMinMonteCarloBits) {
    throw StableError(fmt::format("Monte Carlo BER needs at least {} bits, got {}", kMinMonteCarloBits, n_bits));
  }
}

}  // namespace

std::vector<Transmission> simulate_transmission(const BinaryScheme& scheme, std::size_t n_bits,
                                                std::uint64_t seed) {
  std::vector<Transmission> out;
  out.reserve(n_bits);
  for (std::size_t block = 0; block < block_count(n_bits); ++block) {
    std::mt19937_64 engine(derive_seed(seed, block));
    ChannelSampler sampler(scheme);
    const std::size_t end = std::min(n_bits, (block + 1) * kMonteCarloBlock);
    for (std::size_t i = block * kMonteCarloBlock; i < end; ++i) out.push_back(sampler(engine));
  }
  return out;
}

MonteCarloBer ber_monte_carlo_serial(const BinaryScheme& scheme, std::size_t n_bits, std::uint64_t seed) {
  require_bits(n_bits);
  const DetectorState state = ml_threshold(scheme);
  std::size_t errors = 0;
  for (std::size_t block = 0; block < block_count(n_bits); ++block) {
    errors += block_errors(scheme, state, n_bits, seed, block);
  }
  return summarize(errors, n_bits);
}

MonteCarloBer ber_monte_carlo(const BinaryScheme& scheme, std::size_t n_bits, std::uint64_t seed) {
  require_bits(n_bits);
  const DetectorState state = ml_threshold(scheme);
  const auto blocks = static_cast<std::int64_t>(block_count(n_bits));
  std::size_t errors = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : errors)
  for (std::int64_t block = 0; block < blocks; ++block) {
    errors += block_errors(scheme, state, n_bits, seed, static_cast<std::size_t>(block));
  }
  return summarize(errors, n_bits);
}

}  // namespace mtchan
