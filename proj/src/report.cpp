#include "eeg/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace eeg {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string config_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string_view tool_version() noexcept { return EEG_VERSION; }

void write_header(std::ostream& os, const ReportHeader& header) {
  os << "# command: " << header.command << '\n'
     << "# config_hash: " << header.config_hash << '\n'
     << "# seed: " << header.seed << '\n'
     << "# window: " << header.window << '\n'
     << "# version: " << tool_version() << '\n';
  for (const auto& [k, v] : header.settings) os << "# " << k << ": " << v << '\n';
}

TextReport& TextReport::add(std::string key, std::string value) {
  fields_.emplace_back(std::move(key), std::move(value));
  return *this;
}

TextReport& TextReport::add(std::string key, double value) {
  return add(std::move(key), format_real(value));
}

TextReport& TextReport::add(std::string key, std::uint64_t value) {
  return add(std::move(key), std::to_string(value));
}

TextReport& TextReport::add(std::string key, bool value) {
  return add(std::move(key), std::string(value ? "true" : "false"));
}

void TextReport::write(std::ostream& os) const {
  for (const auto& [k, v] : fields_) os << k << ": " << v << '\n';
}

}  // namespace eeg
