#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace nshyp::cli {

inline constexpr const char* kVersion = "0.1.0";

/// 64-bit FNV-1a, used as the config hash in output metadata.
std::uint64_t fnv1a(const std::string& bytes);

/// %.17g, enough digits to round-trip any double.
std::string format_double(double v);

/// Comma-separated table with '#'-prefixed "key: value" metadata lines
/// followed by a header row.
struct CsvTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  const std::string* meta(const std::string& key) const;
  std::size_t column(const std::string& name) const;  // throws if absent
};

void write_csv(std::ostream& os, const CsvTable& table);
void write_csv(const std::string& path, const CsvTable& table);

/// Throws DomainError on malformed input (ragged rows, non-numeric cells).
CsvTable read_csv(std::istream& is);
CsvTable read_csv(const std::string& path);

}  // namespace nshyp::cli
