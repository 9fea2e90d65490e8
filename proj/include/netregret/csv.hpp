#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace netregret {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

/// Quotes a field when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  /// Appends a row; throws ShapeError on a column-count mismatch.
  void add(std::vector<std::string> row);
  void append(const CsvTable& other);

  void write(std::ostream& out) const;
  /// Writes to `path`, creating parent directories. Throws IoError with the path.
  void save(const std::string& path) const;

  static CsvTable read(std::istream& in);
  static CsvTable load(const std::string& path);

  /// Column index or throws ShapeError naming the missing column.
  std::size_t column(const std::string& name) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace netregret
