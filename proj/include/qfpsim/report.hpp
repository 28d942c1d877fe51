#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace qfp {

/// Column-oriented numeric table written as CSV with a leading
/// "# config_hash=<hash>" comment.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row);
};

std::string format_csv(const Table& table, const std::string& config_hash);
void write_csv(const std::filesystem::path& path, const Table& table, const std::string& config_hash);

/// Line plot of each y column against column x_column.
std::string format_svg(const Table& table, int x_column, const std::vector<int>& y_columns,
                       const std::string& title);
void write_svg(const std::filesystem::path& path, const Table& table, int x_column,
               const std::vector<int>& y_columns, const std::string& title);

}  // namespace qfp
