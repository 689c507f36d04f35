// mtchan: command-line front end for the timing-channel library.
//
// Exit status: 0 success, 1 failed check or skipped sweep points, 2 usage
// error (bad flags, invalid parameters, unwritable output).

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "mtchan/experiments.hpp"
#include "mtchan/geometric_power.hpp"
#include "mtchan/report.hpp"
#include "mtchan/stable.hpp"
#include "mtchan/systems.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Opens `path` for writing, or returns std::cout for an empty path.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw UsageError(fmt::format("cannot open '{}' for writing", path));
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close() {
    if (!file_) {
      std::cout.flush();
      return;
    }
    file_->close();
    if (file_->fail()) throw UsageError("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

mtchan::Format format_of(const std::string& name) { return *mtchan::parse_format(name); }

// ---------------------------------------------------------------------------

struct Table1Options {
  double gsnr = mtchan::kReferenceTableGsnr;
  std::vector<double> betas = mtchan::Table1Config{}.betas;
  std::vector<double> deltas = mtchan::Table1Config{}.deltas;
  std::string output;
  std::string format = "csv";
  int workers = 0;
};

int run_table1(const Table1Options& opt) {
  mtchan::Table1Config config;
  config.gsnr = opt.gsnr;
  config.betas = opt.betas;
  config.deltas = opt.deltas;
  config.workers = opt.workers;
  std::optional<Output> out;
  if (!opt.output.empty()) out.emplace(opt.output);
  const mtchan::Table1Result result = mtchan::run_table1(config);

  std::string header = fmt::format("{:>6}", "beta");
  for (double d : opt.deltas) header += fmt::format(" {:>10}", fmt::format("D={:g}", d));
  header += fmt::format(" {:>11} {:>9} {:>11}  status", "rel.spread", "reference", "max|dev|");
  fmt::print("system C, G-SNR = {:g} ({:.4f} dB)\n{}\n", opt.gsnr, mtchan::to_db(opt.gsnr), header);
  for (const auto& row : result.rows) {
    std::string line = fmt::format("{:>6g}", row.beta);
    for (const auto& cell : row.cells) line += fmt::format(" {:>10.6f}", cell.ber_analytic);
    line += fmt::format(" {:>11.3e}", row.relative_spread);
    if (result.compared_reference && row.reference) {
      line += fmt::format(" {:>9.4f} {:>11.3e}", *row.reference, row.reference_deviation);
    } else {
      line += fmt::format(" {:>9} {:>11}", "-", "-");
    }
    line += row.constant && row.matches_reference ? "  ok" : "  FAIL";
    fmt::print("{}\n", line);
  }
  if (!result.compared_reference) {
    fmt::print("reference digits are tabulated at G-SNR = {:g}; only constancy is checked here\n",
               mtchan::kReferenceTableGsnr);
  }

  if (out) {
    std::vector<mtchan::BerRecord> records;
    for (const auto& row : result.rows) records.insert(records.end(), row.cells.begin(), row.cells.end());
    mtchan::write_records(out->stream(), records, format_of(opt.format));
    out->close();
  }
  return result.passed() ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------

struct SweepOptions {
  std::vector<std::string> systems;
  std::vector<double> betas{0.0, 0.25, 0.5, 0.75, 0.95};
  double delta = 1.0;
  double db_start = -10.0;
  double db_stop = 20.0;
  std::size_t points = 31;
  std::vector<double> gsnr_db;
  std::size_t mc_samples = 0;
  std::uint64_t seed = 1;
  std::string output;
  std::string format = "csv";
  std::string plot;
  int workers = 0;
};

int run_sweep(const SweepOptions& opt) {
  mtchan::SweepConfig config;
  if (!opt.systems.empty()) {
    config.curves.clear();
    for (const auto& name : opt.systems) {
      const mtchan::System system = *mtchan::parse_system(name);
      if (system == mtchan::System::C) {
        for (double beta : opt.betas) config.curves.push_back({system, beta});
      } else {
        config.curves.push_back({system, system == mtchan::System::A ? 1.0 : 0.0});
      }
    }
  } else if (opt.betas != SweepOptions{}.betas) {
    config.curves = {{mtchan::System::B, 0.0}};
    for (double beta : opt.betas) config.curves.push_back({mtchan::System::C, beta});
    config.curves.push_back({mtchan::System::A, 1.0});
  }
  config.gsnr_db = opt.gsnr_db.empty() ? mtchan::db_grid(opt.db_start, opt.db_stop, opt.points) : opt.gsnr_db;
  if (config.gsnr_db.empty()) throw UsageError("G-SNR grid is empty");
  if (!(opt.delta > 0.0)) throw UsageError("--delta must be positive");
  if (opt.mc_samples != 0 && opt.mc_samples < mtchan::kMinMonteCarloBits) {
    throw UsageError(fmt::format("--mc-samples must be 0 or >= {}", mtchan::kMinMonteCarloBits));
  }
  config.delta = opt.delta;
  config.mc_samples = opt.mc_samples;
  config.seed = opt.seed;
  config.workers = opt.workers;

  // Open outputs first so a bad path fails before the grid is computed.
  Output out(opt.output);
  std::optional<Output> plot;
  if (!opt.plot.empty()) plot.emplace(opt.plot);
  const mtchan::SweepResult result = mtchan::run_sweep(config);
  mtchan::write_records(out.stream(), result.records, format_of(opt.format));
  out.close();
  if (plot) {
    mtchan::write_svg_plot(plot->stream(), result.records, "BER versus G-SNR");
    plot->close();
  }
  for (const auto& f : result.failures) {
    fmt::print(stderr, "skipped point {} (system {}, beta {:g}, {:g} dB): {}\n", f.index,
               mtchan::to_string(f.curve.system), f.curve.beta, f.gsnr_db, f.message);
  }
  return result.failures.empty() ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------

int run_validate(const mtchan::ValidateConfig& config) {
  const auto checks = mtchan::run_validation(config);
  bool all = true;
  for (const auto& check : checks) {
    fmt::print("{} {}: {}\n", check.passed ? "PASS" : "FAIL", check.name, check.detail);
    all = all && check.passed;
  }
  fmt::print("{} of {} checks passed\n",
             std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.passed; }), checks.size());
  return all ? kExitOk : kExitCheckFailed;
}

struct LawOptions {
  double alpha = 0.5;
  double beta = 0.0;
  double mu = 0.0;
  double c = 1.0;
  std::vector<double> x;
  std::string what = "pdf";
};

int run_dist(const LawOptions& opt) {
  const mtchan::StableParams law(opt.mu, opt.c, opt.alpha, opt.beta);
  for (double x : opt.x) {
    const double value = opt.what == "cdf" ? mtchan::cdf(law, x) : mtchan::pdf(law, x);
    fmt::print("{}\n", mtchan::format_double(value));
  }
  return kExitOk;
}

int run_geopower(const LawOptions& opt) {
  const mtchan::StableParams law(opt.mu, opt.c, opt.alpha, opt.beta);
  fmt::print("{}\n", mtchan::format_double(mtchan::geometric_power(law)));
  return kExitOk;
}

void add_law_flags(CLI::App* cmd, LawOptions& opt) {
  cmd->add_option("--alpha", opt.alpha, "characteristic exponent in (0, 2]")->capture_default_str();
  cmd->add_option("--beta", opt.beta, "skewness in [-1, 1]")->capture_default_str();
  cmd->add_option("--mu", opt.mu, "location")->capture_default_str();
  cmd->add_option("--c", opt.c, "scale (> 0)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Molecular timing channels with stable noise: BER tables, sweeps and checks"};
  app.set_config("--config", "", "key=value file; [subcommand] sections or subcommand.key names; flags win");
  app.require_subcommand(1);
  const auto workers_help = "worker threads (default: $MTCHAN_WORKERS, else all cores)";

  Table1Options t1;
  auto* table1 = app.add_subcommand("table1", "BER of system C over (beta, Delta) at fixed G-SNR");
  table1->add_option("--gsnr", t1.gsnr, "linear G-SNR")->capture_default_str()->check(CLI::PositiveNumber);
  table1->add_option("--betas", t1.betas, "beta_C rows")->capture_default_str()->delimiter(',');
  table1->add_option("--deltas", t1.deltas, "Delta columns")->capture_default_str()->delimiter(',')->check(
      CLI::PositiveNumber);
  table1->add_option("--output,-o", t1.output, "also write the cells to this file");
  table1->add_option("--format", t1.format, "csv or json")->capture_default_str()->check(
      CLI::IsMember({"csv", "json"}));
  table1->add_option("--workers", t1.workers, workers_help)->check(CLI::NonNegativeNumber);

  SweepOptions sw;
  auto* sweep = app.add_subcommand("sweep", "BER versus G-SNR (dB) per system and beta_C");
  sweep->add_option("--systems", sw.systems, "subset of A,B,C (default B, C, A)")->delimiter(',')->check(
      CLI::IsMember({"A", "B", "C", "a", "b", "c"}));
  sweep->add_option("--betas", sw.betas, "beta_C values for system C")->capture_default_str()->delimiter(',');
  sweep->add_option("--delta", sw.delta, "symbol separation")->capture_default_str();
  sweep->add_option("--db-start", sw.db_start, "first grid point (dB)")->capture_default_str();
  sweep->add_option("--db-stop", sw.db_stop, "last grid point (dB)")->capture_default_str();
  sweep->add_option("--points", sw.points, "grid points")->capture_default_str()->check(CLI::PositiveNumber);
  sweep->add_option("--gsnr-db", sw.gsnr_db, "explicit grid (dB); overrides start/stop/points")->delimiter(',');
  sweep->add_option("--mc-samples", sw.mc_samples, "Monte Carlo bits per point, 0 = analytic only")
      ->capture_default_str();
  sweep->add_option("--seed", sw.seed, "master seed")->capture_default_str();
  sweep->add_option("--output,-o", sw.output, "records file (default stdout)");
  sweep->add_option("--format", sw.format, "csv or json")->capture_default_str()->check(
      CLI::IsMember({"csv", "json"}));
  sweep->add_option("--plot", sw.plot, "write an SVG plot here");
  sweep->add_option("--workers", sw.workers, workers_help)->check(CLI::NonNegativeNumber);

  mtchan::ValidateConfig va;
  auto* validate = app.add_subcommand("validate", "run the numerical, sampling and detection oracles");
  validate->add_option("--mc-samples", va.mc_samples, "Monte Carlo bits per BER check")->capture_default_str();
  validate->add_option("--seed", va.seed, "master seed")->capture_default_str();
  validate->add_option("--tol", va.tol, "absolute tolerance for numeric agreement")->capture_default_str();
  validate->add_option("--workers", va.workers, workers_help)->check(CLI::NonNegativeNumber);

  LawOptions di;
  auto* dist = app.add_subcommand("dist", "density or distribution function of S(mu, c, alpha, beta)");
  add_law_flags(dist, di);
  dist->add_option("--x", di.x, "evaluation points")->required()->delimiter(',');
  dist->add_option("--what", di.what, "pdf or cdf")->capture_default_str()->check(CLI::IsMember({"pdf", "cdf"}));

  LawOptions gp;
  auto* geopower = app.add_subcommand("geopower", "geometric power of S(0, c, alpha, beta)");
  add_law_flags(geopower, gp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*table1) return run_table1(t1);
    if (*sweep) return run_sweep(sw);
    if (*validate) return run_validate(va);
    if (*dist) return run_dist(di);
    if (*geopower) return run_geopower(gp);
  } catch (const UsageError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const mtchan::StableError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(stderr, "failed: {}\n", e.what());
    return kExitCheckFailed;
  }
  return kExitUsage;
}
