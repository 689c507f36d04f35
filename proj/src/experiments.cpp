#include "mtchan/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <numeric>

#include <fmt/format.h>
#include <omp.h>

#include "mtchan/inversion.hpp"
#include "mtchan/ks.hpp"
#include "mtchan/seeding.hpp"
#include "mtchan/stable.hpp"
#include "mtchan/systems.hpp"

namespace mtchan {

double to_db(double ratio) { return 10.0 * std::log10(ratio); }
double from_db(double db) { return std::pow(10.0, db / 10.0); }

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MTCHAN_WORKERS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  return std::max(1, omp_get_max_threads());
}

BerRecord evaluate_point(System system, double beta, double delta, double gsnr, std::size_t mc_samples,
                         std::uint64_t seed) {
  const BinaryScheme scheme = BinaryScheme::at_gsnr(system, delta, gsnr, beta);
  const DetectorState state = ml_threshold(scheme);
  BerRecord record{gsnr,
                   to_db(gsnr),
                   system,
                   scheme.beta(),
                   delta,
                   scheme.c(),
                   state.threshold,
                   ber_at_threshold(scheme, state.threshold),
                   std::nullopt,
                   std::nullopt,
                   std::nullopt};
  if (mc_samples > 0) {
    const MonteCarloBer mc = ber_monte_carlo(scheme, mc_samples, seed);
    record.ber_mc = mc.estimate;
    record.mc_stderr = mc.std_error;
    record.samples = mc.samples;
  }
  return record;
}

std::optional<double> reference_ber(double beta) {
  for (const auto& cell : kReferenceTable) {
    if (cell.beta == beta) return cell.ber;
  }
  return std::nullopt;
}

bool Table1Result::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const Table1Row& row) {
    return row.constant && row.matches_reference;
  });
}

Table1Result run_table1(const Table1Config& config) {
  const std::size_t n_beta = config.betas.size();
  const std::size_t n_delta = config.deltas.size();
  std::vector<BerRecord> cells(n_beta * n_delta);
  const auto total = static_cast<std::int64_t>(cells.size());
#pragma omp parallel for schedule(dynamic) num_threads(resolve_workers(config.workers))
  for (std::int64_t i = 0; i < total; ++i) {
    const auto k = static_cast<std::size_t>(i);
    cells[k] = evaluate_point(System::C, config.betas[k / n_delta], config.deltas[k % n_delta], config.gsnr, 0, 0);
  }

  Table1Result result;
  result.compared_reference = config.compare_reference.value_or(config.gsnr == kReferenceTableGsnr);
  for (std::size_t b = 0; b < n_beta; ++b) {
    Table1Row row;
    row.beta = config.betas[b];
    row.cells.assign(cells.begin() + static_cast<std::ptrdiff_t>(b * n_delta),
                     cells.begin() + static_cast<std::ptrdiff_t>((b + 1) * n_delta));
    double lo = 1.0;
    double hi = 0.0;
    double sum = 0.0;
    for (const auto& cell : row.cells) {
      lo = std::min(lo, cell.ber_analytic);
      hi = std::max(hi, cell.ber_analytic);
      sum += cell.ber_analytic;
    }
    const double mean = row.cells.empty() ? 0.0 : sum / static_cast<double>(row.cells.size());
    row.relative_spread = mean > 0.0 ? (hi - lo) / mean : 0.0;
    row.constant = row.relative_spread <= kTableSpreadTolerance;
    row.reference = reference_ber(row.beta);
    row.reference_deviation = 0.0;
    row.matches_reference = true;
    if (result.compared_reference && row.reference) {
      for (const auto& cell : row.cells) {
        row.reference_deviation = std::max(row.reference_deviation, std::abs(cell.ber_analytic - *row.reference));
      }
      row.matches_reference = row.reference_deviation <= kTableDigitTolerance;
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::vector<Curve> default_curves() {
  return {{System::B, 0.0},  {System::C, 0.0},  {System::C, 0.25}, {System::C, 0.5},
          {System::C, 0.75}, {System::C, 0.95}, {System::A, 1.0}};
}

std::vector<double> db_grid(double start, double stop, std::size_t points) {
  std::vector<double> grid;
  if (points == 0) return grid;
  if (points == 1) return {start};
  grid.reserve(points);
  const double step = (stop - start) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid.push_back(start + step * static_cast<double>(i));
  return grid;
}

SweepResult run_sweep(const SweepConfig& config) {
  const std::size_t n_grid = config.gsnr_db.size();
  const std::size_t total = config.curves.size() * n_grid;
  std::vector<std::optional<BerRecord>> slots(total);
  std::vector<std::string> errors(total);

  const auto count = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic) num_threads(resolve_workers(config.workers))
  for (std::int64_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const Curve& curve = config.curves[k / n_grid];
    const double db = config.gsnr_db[k % n_grid];
    try {
      BerRecord record = evaluate_point(curve.system, curve.beta, config.delta, from_db(db), config.mc_samples,
                                        derive_seed(config.seed, k));
      record.gsnr_db = db;
      slots[k] = record;
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }

  SweepResult result;
  for (std::size_t k = 0; k < total; ++k) {
    if (slots[k]) {
      result.records.push_back(*slots[k]);
    } else {
      result.failures.push_back({k, config.curves[k / n_grid], config.gsnr_db[k % n_grid], errors[k]});
    }
  }
  return result;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kKsSamples = 100'000;
constexpr double kKsSignificance = 1e-3;
constexpr std::size_t kLogMomentSamples = 1'000'000;
constexpr double kLogMomentTolerance = 0.02;

CheckResult check_levy_closed_form(double tol) {
  const StandardStable levy_law(0.5, 1.0);
  double worst_pdf = 0.0;
  double worst_cdf = 0.0;
  // 400 log-spaced points over [0.05, 50].
  for (int i = 0; i < 400; ++i) {
    const double x = 0.05 * std::pow(1000.0, i / 399.0);
    worst_pdf = std::max(worst_pdf, std::abs(std_pdf_numeric(levy_law, x) - levy::pdf(x)));
    worst_cdf = std::max(worst_cdf, std::abs(std_cdf_numeric(levy_law, x) - levy::cdf(x)));
  }
  return {"levy-closed-form-vs-numeric", worst_pdf <= tol && worst_cdf <= tol,
          fmt::format("max |pdf diff| {:.3e}, max |cdf diff| {:.3e}, tol {:.1e}", worst_pdf, worst_cdf, tol)};
}

CheckResult check_symmetric_origin(double tol) {
  const double value = std_pdf(StandardStable(0.5, 0.0), 0.0);
  const double diff = std::abs(value - 2.0 / std::numbers::pi);
  return {"symmetric-density-at-origin", diff <= tol,
          fmt::format("f(0) = {:.17g}, |f(0) - 2/pi| {:.3e}, tol {:.1e}", value, diff, tol)};
}

CheckResult check_inversion_route(double tol) {
  double worst = 0.0;
  for (double beta : {0.0, 0.5, -0.75}) {
    const StandardStable law(0.5, beta);
    for (double x : {-2.0, 0.3, 1.5}) {
      worst = std::max(worst, std::abs(std_pdf(law, x) - inversion::pdf(law, x)));
      worst = std::max(worst, std::abs(std_cdf(law, x) - inversion::cdf(law, x)));
    }
  }
  return {"zolotarev-vs-fourier-inversion", worst <= tol,
          fmt::format("max |diff| {:.3e} over 9 (beta, x) points, tol {:.1e}", worst, tol)};
}

CheckResult ks_check(std::string name, std::vector<double> samples, const std::function<double(double)>& cdf_fn) {
  const KsResult ks = ks_test(std::move(samples), cdf_fn);
  return {std::move(name), ks.passes(kKsSignificance),
          fmt::format("n {}, D {:.5f}, p {:.4f}, significance {}", ks.n, ks.statistic, ks.p_value,
                      kKsSignificance)};
}

std::vector<CheckResult> sampling_checks(std::uint64_t seed) {
  std::vector<CheckResult> out;
  const StableParams levy_law = StableParams::levy(1.0);
  out.push_back(ks_check("ks-levy-sampling", sample(levy_law, kKsSamples, derive_seed(seed, 1)),
                         [](double x) { return levy::cdf(x); }));

  // T1 - T2 for i.i.d. Levy(0, c_A) against S(0, 4 c_A, 1/2, 0).
  const double c_a = 0.7;
  auto first = sample(StableParams::levy(c_a), kKsSamples, derive_seed(seed, 2));
  const auto second = sample(StableParams::levy(c_a), kKsSamples, derive_seed(seed, 3));
  for (std::size_t i = 0; i < first.size(); ++i) first[i] -= second[i];
  const StableParams folded(0.0, 4.0 * c_a, 0.5, 0.0);
  out.push_back(ks_check("ks-levy-difference", std::move(first), [&](double x) { return cdf(folded, x); }));

  for (double beta : {0.25, 0.75}) {
    const BinaryScheme scheme = BinaryScheme::with_scale(System::C, 1.0, 1.3, beta);
    std::vector<double> noise;
    noise.reserve(kKsSamples);
    for (const auto& t : simulate_transmission(scheme, kKsSamples, derive_seed(seed, beta == 0.25 ? 4 : 5))) {
      noise.push_back(t.observed - t.sent);
    }
    const StableParams law = scheme.noise();
    out.push_back(ks_check(fmt::format("ks-system-c-decomposition beta={}", beta), std::move(noise),
                           [&](double x) { return cdf(law, x); }));
  }
  return out;
}

CheckResult check_log_moment(std::uint64_t seed) {
  double worst = 0.0;
  std::string detail;
  const std::array<std::array<double, 2>, 4> pairs = {{{0.5, 0.0}, {0.5, 1.0}, {0.5, 0.5}, {2.0, 0.0}}};
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const StableParams law(0.0, 1.0, pairs[k][0], pairs[k][1]);
    const auto draws = sample(law, kLogMomentSamples, derive_seed(seed, 10 + k));
    double sum = 0.0;
    for (double v : draws) sum += std::log(std::abs(v));
    const double empirical = std::exp(sum / static_cast<double>(draws.size()));
    const double exact = geometric_power(law);
    const double rel = std::abs(empirical / exact - 1.0);
    worst = std::max(worst, rel);
    detail += fmt::format("{}(a={}, b={}) exact {:.6f} mc {:.6f}", k ? "; " : "", pairs[k][0], pairs[k][1], exact,
                          empirical);
  }
  return {"geometric-power-log-moment", worst <= kLogMomentTolerance,
          fmt::format("{}; worst rel {:.4f}, tol {}", detail, worst, kLogMomentTolerance)};
}

std::vector<CheckResult> detection_checks(std::size_t mc_samples, std::uint64_t seed) {
  std::vector<CheckResult> out;
  const std::array<Curve, 3> curves = {{{System::A, 1.0}, {System::B, 0.0}, {System::C, 0.5}}};
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto [system, beta] = curves[k];
    const BerRecord r = evaluate_point(system, beta, 1.0, 1.0, mc_samples, derive_seed(seed, 20 + k));
    const double gap = std::abs(r.ber_analytic - *r.ber_mc);
    out.push_back({fmt::format("ber-analytic-vs-monte-carlo system={} beta={}", to_string(system), beta),
                   gap <= 3.0 * *r.mc_stderr,
                   fmt::format("analytic {:.6f}, mc {:.6f} +/- {:.6f}, |diff| {:.2f} stderr", r.ber_analytic,
                               *r.ber_mc, *r.mc_stderr, gap / *r.mc_stderr)});
  }
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto [system, beta] = curves[k];
    const BinaryScheme scheme = BinaryScheme::with_scale(system, 1e-9, 1.0, beta);
    const double ber = ber_analytic(scheme);
    out.push_back({fmt::format("indistinguishable-limit system={} beta={}", to_string(system), beta),
                   std::abs(ber - 0.5) <= 1e-6, fmt::format("Delta/c = 1e-9, BER {:.12f}", ber)});
  }
  return out;
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidateConfig& config) {
  if (config.mc_samples < kMinMonteCarloBits) {
    throw StableError(fmt::format("validation needs mc_samples >= {}", kMinMonteCarloBits));
  }
  omp_set_num_threads(resolve_workers(config.workers));
  std::vector<CheckResult> out;
  out.push_back(check_levy_closed_form(config.tol));
  out.push_back(check_symmetric_origin(config.tol));
  out.push_back(check_inversion_route(config.tol));
  for (auto& check : sampling_checks(config.seed)) out.push_back(std::move(check));
  out.push_back(check_log_moment(config.seed));
  for (auto& check : detection_checks(config.mc_samples, config.seed)) out.push_back(std::move(check));
  return out;
}

}  // namespace mtchan
