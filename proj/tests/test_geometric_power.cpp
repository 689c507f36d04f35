#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "mtchan/geometric_power.hpp"
#include "mtchan/stable.hpp"

namespace mtchan {
namespace {

constexpr double kPi = std::numbers::pi;

// Independent (mpmath) values.
constexpr double kG = 1.78107241799019798;
constexpr double kScaleA = 0.148741665230188;       // A, Delta = 1, G-SNR = 1
constexpr double kScaleC = 0.594966660920751;       // C, beta = 0, Delta = 1, G-SNR = 1
constexpr double kGsnrB = 0.0884963319017970;       // B, Delta = 1, c = 1
constexpr double kInverseTwoG = 0.280729741783443;  // 1 / (2G)
constexpr double kInverseRootG = 0.749306001288449;

// General-exponent formula written out independently of the library.
double general_form(double c, double alpha, double beta) {
  const double skew = beta * std::tan(kPi * alpha / 2.0);
  return c * std::pow(kG, 1.0 / alpha - 1.0) * std::pow(1.0 + skew * skew, 1.0 / (2.0 * alpha));
}

double log_moment(const StableParams& law, std::size_t n, std::uint64_t seed) {
  double sum = 0.0;
  for (double v : sample(law, n, seed)) sum += std::log(std::abs(v));
  return std::exp(sum / static_cast<double>(n));
}

TEST(GeometricPower, Constants) {
  EXPECT_NEAR(kExpEulerGamma, std::exp(kEulerGamma), 1e-15);
  EXPECT_NEAR(kExpEulerGamma, kG, 1e-15);
}

TEST(GeometricPower, Examples) {
  EXPECT_NEAR(geometric_power(StableParams(0.0, 1.0, 0.5, 0.0)), kG, 1e-14);
  EXPECT_NEAR(geometric_power(StableParams(0.0, 1.0, 0.5, 1.0)), 2.0 * kG, 1e-14);
  EXPECT_NEAR(geometric_power(StableParams(0.0, 1.0, 2.0, 0.0)), kInverseRootG, 1e-14);
  EXPECT_NEAR(geometric_power(StableParams(0.0, 3.0, 1.0, 0.0)), 3.0, 1e-14);
}

TEST(GeometricPower, HalfExponentSimplificationMatchesGeneralForm) {
  for (double beta = -1.0; beta <= 1.0; beta += 0.125) {
    for (double c : {0.01, 1.0, 42.0}) {
      const double simplified = c * kG * (1.0 + beta * beta);
      EXPECT_NEAR(geometric_power(StableParams(0.0, c, 0.5, beta)) / simplified, 1.0, 1e-12);
      EXPECT_NEAR(general_form(c, 0.5, beta) / simplified, 1.0, 1e-12);
    }
  }
}

TEST(GeometricPower, MatchesGeneralFormAcrossExponents) {
  for (double alpha : {0.3, 0.8, 1.2, 1.9}) {
    for (double beta : {-0.7, 0.0, 0.5}) {
      EXPECT_NEAR(geometric_power(StableParams(0.0, 2.0, alpha, beta)) / general_form(2.0, alpha, beta), 1.0,
                  1e-12);
    }
  }
}

TEST(GeometricPower, LogMomentMonteCarlo) {
  const std::array<std::array<double, 2>, 5> pairs = {{{0.5, 0.0}, {0.5, 1.0}, {0.5, 0.6}, {2.0, 0.0}, {1.4, -0.5}}};
  std::uint64_t seed = 40;
  for (const auto& [alpha, beta] : pairs) {
    const StableParams law(0.0, 1.5, alpha, beta);
    const double mc = log_moment(law, 1'000'000, seed++);
    EXPECT_NEAR(mc / geometric_power(law), 1.0, 0.01) << alpha << ' ' << beta;
  }
}

TEST(GeometricPower, ScalesLinearlyAndGrowsWithSkew) {
  const double base = geometric_power(StableParams(0.0, 1.0, 0.5, 0.3));
  EXPECT_NEAR(geometric_power(StableParams(0.0, 7.0, 0.5, 0.3)), 7.0 * base, 1e-13);
  double prev = 0.0;
  for (double beta = 0.0; beta <= 1.0; beta += 0.1) {
    const double value = geometric_power(StableParams(0.0, 1.0, 0.5, beta));
    EXPECT_GT(value, prev);
    EXPECT_DOUBLE_EQ(value, geometric_power(StableParams(0.0, 1.0, 0.5, -beta)));
    prev = value;
  }
}

TEST(GeometricPower, RejectsShiftedLaws) {
  EXPECT_THROW(geometric_power(StableParams(1.0, 1.0, 0.5, 0.0)), StableError);
}

TEST(Gsnr, Examples) {
  EXPECT_NEAR(g_snr(std::sqrt(2.0 * kG) * 0.37, 0.0, 0.37), 1.0, 1e-14);
  EXPECT_NEAR(g_snr(1.0, 0.0, 1.0), kInverseTwoG, 1e-14);
  EXPECT_NEAR(g_snr(5.0, 3.0, 0.7), 4.0 * g_snr(4.0, 3.0, 0.7), 1e-14);
  EXPECT_THROW(g_snr(1.0, 1.0, 1.0), StableError);
  EXPECT_THROW(g_snr(2.0, 1.0, 0.0), StableError);
}

TEST(Gsnr, GaussianCaseIsOrdinarySnr) {
  // Gaussian noise of variance sigma^2 = 2 c^2: G-SNR reduces to range^2 / sigma^2.
  const StableParams gauss(0.0, 0.8, 2.0, 0.0);
  EXPECT_NEAR(g_snr(3.0, 0.0, geometric_power(gauss)), 9.0 / (2.0 * 0.8 * 0.8), 1e-13);
}

TEST(SystemGsnr, Examples) {
  const auto a = system_gsnr({System::A, 1.0, kScaleA});
  EXPECT_NEAR(a.value, 1.0, 1e-12);
  EXPECT_FALSE(a.upper_bound);
  const auto b = system_gsnr({System::B, 1.0, 1.0});
  EXPECT_NEAR(b.value, kGsnrB, 1e-15);
  EXPECT_TRUE(b.upper_bound);
  EXPECT_NEAR(system_gsnr({System::C, 1.0, kScaleC, 0.0}).value, 1.0, 1e-12);
}

TEST(SystemGsnr, MatchesDirectFormulas) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> pos(0.05, 20.0);
  std::uniform_real_distribution<double> skew(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double delta = pos(rng);
    const double c = pos(rng);
    const double beta = skew(rng);
    const double direct_a = std::pow(delta / (2.0 * c * kG), 2.0) / (2.0 * kG);
    const double direct_b = std::pow(delta / (c * kG), 2.0) / (2.0 * kG);
    const double direct_c = std::pow(2.0 * delta / (c * kG * (1.0 + beta * beta)), 2.0) / (2.0 * kG);
    EXPECT_NEAR(system_gsnr({System::A, delta, c}).value / direct_a, 1.0, 1e-12);
    EXPECT_NEAR(system_gsnr({System::B, delta, c}).value / direct_b, 1.0, 1e-12);
    EXPECT_NEAR(system_gsnr({System::C, delta, c, beta}).value / direct_c, 1.0, 1e-12);
    // Fully skewed C has twice A's range and A's geometric power.
    EXPECT_NEAR(system_gsnr({System::C, delta, c, 1.0}).value, 4.0 * system_gsnr({System::A, delta, c}).value,
                1e-12 * direct_a);
    // Same scale: A's skewed noise has twice B's geometric power.
    EXPECT_NEAR(system_gsnr({System::B, delta, c}).value, 4.0 * system_gsnr({System::A, delta, c}).value,
                1e-12 * direct_b);
  }
}

TEST(SystemGsnr, PhysicalChannelsFavourSynchronizedRelease) {
  // With the same distance and diffusion, c_B = 4 c_A and so A's G-SNR is at
  // least B's (here exactly 4x).
  for (double d : {0.5, 1.0, 3.0}) {
    for (double diff : {0.1, 1.0}) {
      const double ca = physics_to_channel(ChannelSpec::system_a(d, diff)).c();
      const double cb = physics_to_channel(ChannelSpec::system_b(d, diff)).c();
      EXPECT_GE(system_gsnr({System::A, 1.0, ca}).value, 4.0 * system_gsnr({System::B, 1.0, cb}).value * (1 - 1e-12));
    }
  }
}

TEST(ScaleForGsnr, Examples) {
  EXPECT_NEAR(scale_for_gsnr(System::A, 1.0, 1.0), kScaleA, 1e-14);
  EXPECT_NEAR(scale_for_gsnr(System::C, 1.0, 1.0, 0.0), kScaleC, 1e-14);
  EXPECT_NEAR(kScaleA, 1.0 / (2.0 * kG * std::sqrt(2.0 * kG)), 1e-15);
  EXPECT_NEAR(kScaleC, 2.0 / (kG * std::sqrt(2.0 * kG)), 1e-15);
}

TEST(ScaleForGsnr, RoundTrip) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_real_distribution<double> log_range(-3.0, 3.0);
  std::uniform_real_distribution<double> skew(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const auto system = static_cast<System>(pick(rng));
    const double delta = std::pow(10.0, log_range(rng));
    const double gsnr = std::pow(10.0, log_range(rng));
    const double beta = system == System::C ? skew(rng) : 0.0;
    const double c = scale_for_gsnr(system, delta, gsnr, beta);
    EXPECT_NEAR(system_gsnr({system, delta, c, beta}).value / gsnr, 1.0, 1e-12);
  }
}

TEST(ScaleForGsnr, Errors) {
  EXPECT_THROW(scale_for_gsnr(System::A, 0.0, 1.0), StableError);
  EXPECT_THROW(scale_for_gsnr(System::A, 1.0, -1.0), StableError);
  EXPECT_THROW(scale_for_gsnr(System::C, 1.0, 1.0, 1.5), StableError);
}

TEST(PhysicsToChannel, Examples) {
  const auto a = physics_to_channel(ChannelSpec::system_a(1.0, 0.5));
  EXPECT_DOUBLE_EQ(a.c(), 1.0);
  EXPECT_EQ(a.beta(), 1.0);
  const auto b = physics_to_channel(ChannelSpec::system_b(1.0, 0.5));
  EXPECT_DOUBLE_EQ(b.c(), 4.0);
  EXPECT_EQ(b.beta(), 0.0);
  const auto c = physics_to_channel(ChannelSpec::system_c(1.0, 0.5, 0.5));
  EXPECT_DOUBLE_EQ(c.c(), b.c());
  EXPECT_EQ(c.beta(), 0.0);
}

TEST(PhysicsToChannel, LopsidedDiffusionApproachesSystemA) {
  const double d = 1.3;
  const double db = 0.4;
  const auto c = physics_to_channel(ChannelSpec::system_c(d, 1e8 * db, db));
  EXPECT_NEAR(c.beta(), 1.0, 1e-3);
  EXPECT_NEAR(c.c() / (d * d / (2.0 * db)), 1.0, 1e-3);
}

TEST(PhysicsToChannel, SkewSignFollowsFasterParticle) {
  EXPECT_GT(physics_to_channel(ChannelSpec::system_c(1.0, 2.0, 0.5)).beta(), 0.0);
  EXPECT_LT(physics_to_channel(ChannelSpec::system_c(1.0, 0.5, 2.0)).beta(), 0.0);
  EXPECT_THROW(ChannelSpec::system_a(-1.0, 1.0), StableError);
  EXPECT_THROW(ChannelSpec::system_c(1.0, 1.0, 0.0), StableError);
}

TEST(SystemNames, ParseAndPrint) {
  for (auto s : {System::A, System::B, System::C}) EXPECT_EQ(parse_system(to_string(s)), s);
  EXPECT_EQ(parse_system("c"), System::C);
  EXPECT_FALSE(parse_system("D"));
  EXPECT_FALSE(parse_system("AB"));
}

}  // namespace
}  // namespace mtchan
