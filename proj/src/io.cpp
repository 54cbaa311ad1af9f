#include "hullcheck/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hullcheck {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string describe(const std::string& source, std::size_t row, std::size_t line) {
  return source + ": row " + std::to_string(row) + " (line " + std::to_string(line) + ")";
}

std::optional<Index> parse_dim_header(std::string_view comment) {
  // comment excludes the leading '#'
  comment = trim(comment);
  constexpr std::string_view key = "dim=";
  if (comment.substr(0, key.size()) != key) return std::nullopt;
  const auto value = trim(comment.substr(key.size()));
  long long dim = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), dim);
  if (ec != std::errc() || ptr != value.data() + value.size() || dim < 1) {
    throw InputError("malformed dimension header '#" + std::string(comment) + "'");
  }
  return static_cast<Index>(dim);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

} // namespace

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), ptr);
}

CsvTable parse_csv(const std::string& text, const std::string& source) {
  CsvTable table;
  std::size_t line_no = 0;
  std::size_t row_no = 0;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto eol = rest.find('\n');
    std::string_view line = rest.substr(0, eol);
    rest = eol == std::string_view::npos ? std::string_view{} : rest.substr(eol + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (auto dim = parse_dim_header(line.substr(1))) {
        if (table.declared_dim || row_no > 0) {
          throw InputError(source + ": dimension header must appear once, before the data");
        }
        table.declared_dim = dim;
      }
      continue;
    }
    ++row_no;
    std::vector<double> row;
    std::size_t field_no = 0;
    std::string_view fields = line;
    for (;;) {
      const auto comma = fields.find(',');
      const std::string_view field = trim(fields.substr(0, comma));
      ++field_no;
      double value = 0.0;
      const char* begin = field.data();
      const char* end = field.data() + field.size();
      if (!field.empty() && *begin == '+') ++begin;
      const auto [ptr, ec] = std::from_chars(begin, end, value);
      if (field.empty() || ec != std::errc() || ptr != end) {
        throw InputError(describe(source, row_no, line_no) + ": field " + std::to_string(field_no) +
                         " '" + std::string(field) + "' is not a number");
      }
      if (!std::isfinite(value)) {
        throw InputError(describe(source, row_no, line_no) + ": field " + std::to_string(field_no) +
                         " is not finite");
      }
      row.push_back(value);
      if (comma == std::string_view::npos) break;
      fields = fields.substr(comma + 1);
    }
    const std::size_t expected = table.declared_dim ? static_cast<std::size_t>(*table.declared_dim)
                                 : table.rows.empty() ? row.size()
                                                      : table.rows.front().size();
    if (row.size() != expected) {
      throw InputError(describe(source, row_no, line_no) + ": expected " + std::to_string(expected) +
                       " fields, found " + std::to_string(row.size()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) { return parse_csv(read_file(path), path.string()); }

PointSet read_points(const std::filesystem::path& path) {
  const CsvTable t = read_csv(path);
  if (!t.declared_dim) throw InputError(path.string() + ": missing '# dim=m' header");
  if (t.rows.empty()) throw InputError(path.string() + ": no points");
  return PointSet::from_points(t.rows);
}

Vector read_query(const std::filesystem::path& path, Index dim) {
  const CsvTable t = read_csv(path);
  if (t.rows.size() != 1) {
    throw InputError(path.string() + ": expected exactly one row, found " + std::to_string(t.rows.size()));
  }
  const auto& row = t.rows.front();
  if (static_cast<Index>(row.size()) != dim) {
    throw InputError(path.string() + ": query has dimension " + std::to_string(row.size()) +
                     ", points have dimension " + std::to_string(dim));
  }
  return Eigen::Map<const Vector>(row.data(), dim);
}

LpInstance read_lp(const std::filesystem::path& a_path, const std::filesystem::path& b_path) {
  const CsvTable a = read_csv(a_path);
  if (a.rows.empty()) throw InputError(a_path.string() + ": no rows");
  const CsvTable b = read_csv(b_path);
  if (b.rows.size() != 1) throw InputError(b_path.string() + ": expected exactly one row");
  LpInstance lp;
  const auto m = static_cast<Index>(a.rows.size());
  const auto n = static_cast<Index>(a.rows.front().size());
  lp.A.resize(m, n);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) lp.A(i, j) = a.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  const auto& brow = b.rows.front();
  if (static_cast<Index>(brow.size()) != m) {
    throw InputError(b_path.string() + ": b has " + std::to_string(brow.size()) + " entries, A has " +
                     std::to_string(m) + " rows");
  }
  lp.b = Eigen::Map<const Vector>(brow.data(), m);
  return lp;
}

std::string row_csv(const Vector& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v(i));
  }
  out += '\n';
  return out;
}

std::string points_csv(const PointSet& s) {
  std::string out = "# dim=" + std::to_string(s.dim()) + "\n";
  for (Index j = 0; j < s.count(); ++j) out += row_csv(s.point(j));
  return out;
}

std::string matrix_csv(const Matrix& rows_by_row) {
  std::string out;
  for (Index i = 0; i < rows_by_row.rows(); ++i) out += row_csv(rows_by_row.row(i).transpose());
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
}

} // namespace hullcheck
