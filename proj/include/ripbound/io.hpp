#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ripbound/rip_bounds.hpp"

namespace ripbound::io {

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reals serialize with 17 significant digits so parsing them back is exact.
std::string format_real(double v);

// Minimal CSV assembly; fields are expected to be comma-free.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(std::vector<std::string> fields);
  std::string render() const;  // header + rows, '\n' line endings

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Flags column for a curve row: ';'-separated tokens; empty string when
// nothing is flagged. Invalid bounds serialize as empty fields, and every
// empty field has a token here.
std::string curve_flags(const bounds::CurveRow& row);

// CSV with header compression_rate,sparsity_level,n,N,s,lower_bound,
// upper_new,upper_classical,flags.
std::string curve_csv(std::span<const bounds::CurveRow> rows);

struct SvgSeries {
  std::string label;
  std::string color;
  bool dashed = false;
  std::vector<std::pair<double, double>> points;  // (x, y) data coordinates
};

// Self-contained 800x600 line chart; y values are clipped into [0, y_clip]
// for display only. Exactly one <polyline> element per series.
std::string svg_chart(const std::string& title, const std::string& x_label,
                      const std::string& y_label,
                      std::span<const SvgSeries> series, double y_clip = 2.0);

// Flat key=value reproduction record; keys keep insertion order.
std::string manifest_text(
    std::span<const std::pair<std::string, std::string>> entries);

// UTC timestamp, ISO 8601.
std::string timestamp_utc();

void write_file(const std::string& path, const std::string& content);

} // namespace ripbound::io
