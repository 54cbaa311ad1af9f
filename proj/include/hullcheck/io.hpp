#pragma once

// CSV ingestion and round-trip number formatting.

#include "hullcheck/lp.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hullcheck {

/// Malformed or inconsistent input; the CLI maps it to exit code 3.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

struct CsvTable {
  std::vector<std::vector<double>> rows;
  std::optional<Index> declared_dim; // from a "# dim=m" header
};

/// Comma-separated decimal rows. Blank lines and lines starting with '#' are
/// skipped apart from the "# dim=m" header. Rows are numbered from 1 in
/// errors, counting data rows only. NaN and infinities are rejected.
CsvTable parse_csv(const std::string& text, const std::string& source = "<input>");
CsvTable read_csv(const std::filesystem::path& path);

/// One point per row; requires the "# dim=m" header.
PointSet read_points(const std::filesystem::path& path);
/// Single row of the given dimension.
Vector read_query(const std::filesystem::path& path, Index dim);
/// A as m rows of n entries, b as one row of m entries.
LpInstance read_lp(const std::filesystem::path& a_path, const std::filesystem::path& b_path);

std::string points_csv(const PointSet& s);
std::string row_csv(const Vector& v);
std::string matrix_csv(const Matrix& rows_by_row);

void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace hullcheck
