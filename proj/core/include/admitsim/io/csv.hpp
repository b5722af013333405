#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace admitsim::io {

/// A parsed CSV file with a header row. Fields never contain commas or
/// quotes in this toolkit's schemas, so no quoting is supported.
struct CsvTable {
  std::filesystem::path source;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column position; throws InputError naming the file when absent.
  std::size_t column(const std::string& name) const;
};

/// Throws InputError when the file cannot be read, is empty, or a row has the
/// wrong number of fields (reported as file:line).
CsvTable read_csv(const std::filesystem::path& path);

/// Replaces any existing file.
/// Throws InputError when the file cannot be opened.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// Strict numeric parsing; throws InputError citing `where`.
double parse_double(const std::string& text, const std::string& where);
std::int64_t parse_int(const std::string& text, const std::string& where);
bool parse_bool(const std::string& text, const std::string& where);

}  // namespace admitsim::io
