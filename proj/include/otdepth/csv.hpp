#pragma once

#include "otdepth/geometry.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace otdepth {

/// Parse failure carrying the 1-based line number of the offending row.
class CsvError : public std::runtime_error {
  public:
    CsvError(std::string message, std::size_t line)
        : std::runtime_error(std::move(message)), line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// Point format: one point per row, d comma-separated numeric columns.
/// Lines starting with '#' are comments/headers and are skipped.
PointCloud read_cloud_csv(std::istream& in, std::string label = "");
PointCloud read_cloud_csv_file(const std::string& path);

/// Writes with shortest round-tripping decimal representation, so
/// cloud -> CSV -> cloud is exact.
void write_cloud_csv(std::ostream& out, const PointCloud& cloud);
void write_cloud_csv_file(const std::string& path, const PointCloud& cloud);

std::string format_double(double v);

}  // namespace otdepth
