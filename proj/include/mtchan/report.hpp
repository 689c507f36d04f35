#ifndef MTCHAN_REPORT_HPP_
#define MTCHAN_REPORT_HPP_

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "mtchan/experiments.hpp"

namespace mtchan {

enum class Format { Csv, Json };
std::optional<Format> parse_format(std::string_view text);

/// Header: gsnr_db,system,beta,delta,c,threshold,ber_analytic,ber_mc,mc_stderr,samples
/// Absent Monte Carlo columns are written as empty fields.
inline constexpr std::string_view kCsvHeader =
    "gsnr_db,system,beta,delta,c,threshold,ber_analytic,ber_mc,mc_stderr,samples";

void write_csv(std::ostream& out, std::span<const BerRecord> records);
/// Array of objects with the CSV column names; absent values are null.
void write_json(std::ostream& out, std::span<const BerRecord> records);
void write_records(std::ostream& out, std::span<const BerRecord> records, Format format);

/// Self-contained SVG: BER (log scale) against G-SNR in dB, one polyline per
/// (system, beta) curve in order of first appearance.
void write_svg_plot(std::ostream& out, std::span<const BerRecord> records, std::string_view title);

/// Full-precision decimal used in every text output.
std::string format_double(double value);

}  // namespace mtchan

#endif  // MTCHAN_REPORT_HPP_
