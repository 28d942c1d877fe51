#include "qfpsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>

#include "qfpsim/error.hpp"

namespace qfp {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io_error", fmt::format("cannot write {}", path.string()));
  out << text;
}

constexpr const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

void Table::add(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw InvalidArgument(fmt::format("row has {} values, table has {} columns", row.size(), columns.size()));
  }
  rows.push_back(std::move(row));
}

std::string format_csv(const Table& table, const std::string& config_hash) {
  std::string out = fmt::format("# config_hash={}\n", config_hash);
  out += fmt::format("{}\n", fmt::join(table.columns, ","));
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += fmt::format("{:.12g}", row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const Table& table, const std::string& config_hash) {
  write_text(path, format_csv(table, config_hash));
}

std::string format_svg(const Table& table, int x_column, const std::vector<int>& y_columns,
                       const std::string& title) {
  constexpr double width = 640, height = 400, margin = 50;
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& row : table.rows) {
    x_lo = std::min(x_lo, row[x_column]);
    x_hi = std::max(x_hi, row[x_column]);
    for (int c : y_columns) {
      if (!std::isfinite(row[c])) continue;
      y_lo = std::min(y_lo, row[c]);
      y_hi = std::max(y_hi, row[c]);
    }
  }
  if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
  if (!(y_hi > y_lo)) y_hi = y_lo + 1.0;
  auto px = [&](double x) { return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin); };
  auto py = [&](double y) { return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin); };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{}\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">{}</text>\n"
      "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
      width, height, margin, title, margin, margin, width - 2 * margin, height - 2 * margin);
  svg += fmt::format(
      "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{:.4g}</text>\n"
      "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{:.4g}</text>\n"
      "<text x=\"5\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{:.4g}</text>\n"
      "<text x=\"5\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{:.4g}</text>\n"
      "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
      margin, height - margin + 15, x_lo, width - margin, height - margin + 15, x_hi, height - margin, y_lo,
      margin + 10, y_hi, width / 2, height - 10, table.columns[x_column]);

  for (std::size_t k = 0; k < y_columns.size(); ++k) {
    const char* colour = kColours[k % std::size(kColours)];
    std::string points;
    for (const auto& row : table.rows) {
      const double y = row[y_columns[k]];
      if (!std::isfinite(y)) continue;
      points += fmt::format("{:.2f},{:.2f} ", px(row[x_column]), py(y));
    }
    svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", colour,
                       points);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" fill=\"{}\">{}</text>\n",
                       width - margin - 120, margin + 15 + 14 * k, colour, table.columns[y_columns[k]]);
  }
  svg += "</svg>\n";
  return svg;
}

void write_svg(const std::filesystem::path& path, const Table& table, int x_column,
               const std::vector<int>& y_columns, const std::string& title) {
  write_text(path, format_svg(table, x_column, y_columns, title));
}

}  // namespace qfp
