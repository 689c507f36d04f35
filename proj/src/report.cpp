#include "mtchan/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "json.hpp"

namespace mtchan {

std::optional<Format> parse_format(std::string_view text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  return std::nullopt;
}

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

void write_csv(std::ostream& out, std::span<const BerRecord> records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << format_double(r.gsnr_db) << ',' << to_string(r.system) << ',' << format_double(r.beta) << ','
        << format_double(r.delta) << ',' << format_double(r.c) << ',' << format_double(r.threshold) << ','
        << format_double(r.ber_analytic) << ',';
    if (r.ber_mc) out << format_double(*r.ber_mc);
    out << ',';
    if (r.mc_stderr) out << format_double(*r.mc_stderr);
    out << ',';
    if (r.samples) out << *r.samples;
    out << '\n';
  }
}

void write_json(std::ostream& out, std::span<const BerRecord> records) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json row;
    row["gsnr_db"] = r.gsnr_db;
    row["system"] = std::string(to_string(r.system));
    row["beta"] = r.beta;
    row["delta"] = r.delta;
    row["c"] = r.c;
    row["threshold"] = r.threshold;
    row["ber_analytic"] = r.ber_analytic;
    row["ber_mc"] = r.ber_mc ? nlohmann::ordered_json(*r.ber_mc) : nlohmann::ordered_json();
    row["mc_stderr"] = r.mc_stderr ? nlohmann::ordered_json(*r.mc_stderr) : nlohmann::ordered_json();
    row["samples"] = r.samples ? nlohmann::ordered_json(*r.samples) : nlohmann::ordered_json();
    rows.push_back(std::move(row));
  }
  out << rows.dump(2) << '\n';
}

void write_records(std::ostream& out, std::span<const BerRecord> records, Format format) {
  if (format == Format::Json) {
    write_json(out, records);
  } else {
    write_csv(out, records);
  }
}

namespace {

struct Series {
  System system;
  double beta;
  std::vector<std::pair<double, double>> points;  // (dB, BER)
};

constexpr std::array<std::string_view, 8> kPalette = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                                                      "#8c564b", "#e377c2", "#ff7f0e", "#17becf"};

}  // namespace

void write_svg_plot(std::ostream& out, std::span<const BerRecord> records, std::string_view title) {
  std::vector<Series> series;
  for (const auto& r : records) {
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const Series& s) { return s.system == r.system && s.beta == r.beta; });
    if (it == series.end()) {
      series.push_back({r.system, r.beta, {}});
      it = series.end() - 1;
    }
    if (r.ber_analytic > 0.0) it->points.emplace_back(r.gsnr_db, r.ber_analytic);
  }

  double x_lo = 0.0, x_hi = 1.0, ber_lo = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      x_lo = first ? x : std::min(x_lo, x);
      x_hi = first ? x : std::max(x_hi, x);
      ber_lo = std::min(ber_lo, y);
      first = false;
    }
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  const int decade_lo = static_cast<int>(std::floor(std::log10(ber_lo)));

  constexpr double width = 720, height = 480, left = 70, right = 190, top = 40, bottom = 55;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double ber) { return top + (0.0 - std::log10(ber)) / (0.0 - decade_lo) * plot_h; };

  out << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">)", width,
                     height, width, height)
      << '\n';
  out << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';
  out << fmt::format(R"(<text x="{:.1f}" y="24" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>)",
                     left + plot_w / 2, title)
      << '\n';
  for (int d = decade_lo; d <= 0; ++d) {
    const double y = py(std::pow(10.0, d));
    out << fmt::format(R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="#ddd"/>)", left, y,
                       left + plot_w, y)
        << '\n';
    out << fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-family="sans-serif" font-size="11" text-anchor="end">1e{}</text>)",
                       left - 6, y + 4, d)
        << '\n';
  }
  const double tick = (x_hi - x_lo) > 20 ? 5.0 : 1.0;
  for (double x = std::ceil(x_lo / tick) * tick; x <= x_hi + 1e-9; x += tick) {
    const double xp = px(x);
    out << fmt::format(R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="#ddd"/>)", xp, top, xp,
                       top + plot_h)
        << '\n';
    out << fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-family="sans-serif" font-size="11" text-anchor="middle">{:g}</text>)",
                       xp, top + plot_h + 16, x)
        << '\n';
  }
  out << fmt::format(R"(<rect x="{}" y="{}" width="{:.2f}" height="{:.2f}" fill="none" stroke="black"/>)", left, top,
                     plot_w, plot_h)
      << '\n';
  out << fmt::format(R"(<text x="{:.1f}" y="{:.1f}" font-family="sans-serif" font-size="13" text-anchor="middle">G-SNR (dB)</text>)",
                     left + plot_w / 2, height - 14)
      << '\n';
  out << fmt::format(R"svg(<text x="18" y="{:.1f}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 18 {:.1f})">BER</text>)svg",
                     top + plot_h / 2, top + plot_h / 2)
      << '\n';

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto colour = kPalette[k % kPalette.size()];
    std::string path;
    for (const auto& [x, y] : series[k].points) path += fmt::format("{:.2f},{:.2f} ", px(x), py(y));
    out << fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="1.8" points="{}"/>)", colour, path) << '\n';
    const double ly = top + 14 + 18.0 * static_cast<double>(k);
    const double lx = left + plot_w + 14;
    out << fmt::format(R"(<line x1="{:.1f}" y1="{:.1f}" x2="{:.1f}" y2="{:.1f}" stroke="{}" stroke-width="2"/>)", lx,
                       ly, lx + 22, ly, colour)
        << '\n';
    const std::string label = series[k].system == System::C
                                  ? fmt::format("system C, beta={:g}", series[k].beta)
                                  : fmt::format("system {}", to_string(series[k].system));
    out << fmt::format(R"(<text x="{:.1f}" y="{:.1f}" font-family="sans-serif" font-size="12">{}</text>)", lx + 28,
                       ly + 4, label)
        << '\n';
  }
  out << "</svg>\n";
}

}  // namespace mtchan
