#include "admitsim/io/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "admitsim/common.hpp"

namespace admitsim::io {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == name) return k;
  }
  throw InputError(fmt::format("{}: missing column '{}'", source.string(), name));
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot read {}", path.string()));
  CsvTable t;
  t.source = path;
  std::string line;
  if (!std::getline(in, line)) throw InputError(fmt::format("{}: empty file", path.string()));
  if (!line.empty() && line.back() == '\r') line.pop_back();
  t.header = split(line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != t.header.size()) {
      throw InputError(fmt::format("{}:{}: expected {} fields, found {}", path.string(), line_no, t.header.size(),
                                   fields.size()));
    }
    t.rows.push_back(std::move(fields));
  }
  return t;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(fmt::format("cannot write {}", path.string()));
  std::string buffer = fmt::format("{}\n", fmt::join(header, ","));
  for (const auto& r : rows) {
    buffer += fmt::format("{}\n", fmt::join(r, ","));
    if (buffer.size() > (1u << 20)) {
      out << buffer;
      buffer.clear();
    }
  }
  out << buffer;
  if (!out) throw InputError(fmt::format("failed writing {}", path.string()));
}

std::string format_double(double v) { return fmt::format("{}", v); }

double parse_double(const std::string& text, const std::string& where) {
  double v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw InputError(fmt::format("{}: '{}' is not a number", where, text));
  return v;
}

std::int64_t parse_int(const std::string& text, const std::string& where) {
  std::int64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw InputError(fmt::format("{}: '{}' is not an integer", where, text));
  return v;
}

bool parse_bool(const std::string& text, const std::string& where) {
  if (text == "1") return true;
  if (text == "0") return false;
  throw InputError(fmt::format("{}: '{}' is not 0 or 1", where, text));
}

}  // namespace admitsim::io
