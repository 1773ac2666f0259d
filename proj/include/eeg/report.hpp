#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eeg {

/// Shortest round-trip-safe rendering: 17 significant digits, "inf"/"nan".
std::string format_real(double x);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string config_hash(std::string_view text);

std::string_view tool_version() noexcept;

/// Provenance block written at the top of every output file.
struct ReportHeader {
  std::string command;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::uint64_t window = 0;
  std::vector<std::pair<std::string, std::string>> settings;  // every default, explicit
};

/// Writes "# key: value" lines.
void write_header(std::ostream& os, const ReportHeader& header);

/// Accumulates "key: value" lines of a structured-text report.
class TextReport {
 public:
  TextReport& add(std::string key, std::string value);
  TextReport& add(std::string key, const char* value) { return add(std::move(key), std::string(value)); }
  TextReport& add(std::string key, double value);
  TextReport& add(std::string key, std::uint64_t value);
  TextReport& add(std::string key, bool value);

  void write(std::ostream& os) const;
  const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

}  // namespace eeg
