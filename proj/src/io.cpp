#include "ripbound/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace ripbound::io {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvTable::add_row(std::vector<std::string> fields) {
  if (fields.size() != header_.size())
    throw std::logic_error("CsvTable: row width does not match header");
  rows_.push_back(std::move(fields));
}

std::string CsvTable::render() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header_.size(); ++i)
    out << (i ? "," : "") << header_[i];
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  return out.str();
}

namespace {

void append_token(std::string& flags, const std::string& token) {
  if (!flags.empty()) flags += ';';
  flags += token;
}

std::string condensed(std::string reason) {
  std::erase(reason, ' ');
  return reason;
}

} // namespace

std::string curve_flags(const bounds::CurveRow& row) {
  std::string flags;
  if (!row.dims_valid) {
    append_token(flags, "invalid_dims");
    return flags;
  }
  if (!row.lower_plus.valid)
    append_token(flags, "lower_plus_invalid:" + condensed(row.lower_plus.reason));
  if (!row.lower_minus.valid)
    append_token(flags, "lower_minus_invalid:" + condensed(row.lower_minus.reason));
  if (!row.upper_new.valid)
    append_token(flags, "upper_invalid:" + condensed(row.upper_new.reason));
  if (row.upper_new.level_warning) append_token(flags, "upper_level_note:s/N>=1/5");
  const auto lower = row.lower();
  if (lower && *lower <= 0.0) append_token(flags, "lower_vacuous");
  if (lower && *lower > 2.0) append_token(flags, "clip_lower");
  if (row.upper_new.valid && row.upper_new.value && *row.upper_new.value > 2.0)
    append_token(flags, "clip_upper_new");
  if (row.upper_classical && *row.upper_classical > 2.0)
    append_token(flags, "clip_upper_classical");
  return flags;
}

std::string curve_csv(std::span<const bounds::CurveRow> rows) {
  CsvTable table({"compression_rate", "sparsity_level", "n", "N", "s",
                  "lower_bound", "upper_new", "upper_classical", "flags"});
  for (const auto& row : rows) {
    const auto opt_field = [](const std::optional<double>& v) {
      return v ? format_real(*v) : std::string();
    };
    std::optional<double> upper;
    if (row.dims_valid && row.upper_new.valid && row.upper_new.value)
      upper = *row.upper_new.value;
    table.add_row({format_real(row.compression_rate),
                   format_real(row.sparsity_level), std::to_string(row.n),
                   std::to_string(row.N), std::to_string(row.s),
                   opt_field(row.lower()), opt_field(upper),
                   opt_field(row.upper_classical), curve_flags(row)});
  }
  return table.render();
}

namespace {
constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 70, kRight = 24, kTop = 44, kBottom = 56;
} // namespace

std::string svg_chart(const std::string& title, const std::string& x_label,
                      const std::string& y_label,
                      std::span<const SvgSeries> series, double y_clip) {
  double xmin = 0.0, xmax = 1.0;
  bool have_x = false;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (!have_x) {
        xmin = xmax = x;
        have_x = true;
      } else {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
      }
    }
  if (!have_x || xmax == xmin) xmax = xmin + 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto sx = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
  const auto sy = [&](double y) {
    const double clipped = std::clamp(y, 0.0, y_clip);
    return kTop + (1.0 - clipped / y_clip) * plot_h;
  };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << title << "</text>\n";

  // axes
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\""
      << kLeft + plot_w << "\" y2=\"" << kTop + plot_h
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  char buf[64];
  for (int i = 0; i <= 4; ++i) {  // y ticks
    const double v = y_clip * i / 4.0;
    const double y = sy(v);
    std::snprintf(buf, sizeof buf, "%.2g", v);
    out << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << y << "\" x2=\"" << kLeft
        << "\" y2=\"" << y << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << buf << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {  // x ticks
    const double v = xmin + (xmax - xmin) * i / 5.0;
    const double x = sx(v);
    std::snprintf(buf, sizeof buf, "%.3g", v);
    out << "<line x1=\"" << x << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << x
        << "\" y2=\"" << kTop + plot_h + 4 << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << x << "\" y=\"" << kTop + plot_h + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << buf << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.6\"";
    if (s.dashed) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    bool first = true;
    for (const auto& [x, y] : s.points) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f", sx(x), sy(y));
      out << (first ? "" : " ") << buf;
      first = false;
    }
    out << "\"/>\n";
  }

  // legend
  double ly = kTop + 10;
  for (const auto& s : series) {
    out << "<line x1=\"" << kLeft + 12 << "\" y1=\"" << ly << "\" x2=\""
        << kLeft + 44 << "\" y2=\"" << ly << "\" stroke=\"" << s.color
        << "\" stroke-width=\"1.6\"";
    if (s.dashed) out << " stroke-dasharray=\"6 4\"";
    out << "/>\n"
        << "<text x=\"" << kLeft + 50 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label
        << "</text>\n";
    ly += 16;
  }

  out << "</svg>\n";
  return out.str();
}

std::string manifest_text(
    std::span<const std::pair<std::string, std::string>> entries) {
  std::ostringstream out;
  for (const auto& [k, v] : entries) out << k << '=' << v << '\n';
  return out.str();
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw io_error("write to '" + path + "' failed");
}

} // namespace ripbound::io
