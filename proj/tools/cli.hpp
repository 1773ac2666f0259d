#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace eeg::cli {

enum class Format { Csv, Text };

struct RunConfig {
  std::string command;  // simulate|analytic|series|clt|urns|complete|couple|verify
  std::string measure;  // file path or inline JSON
  std::uint64_t seed = 1;
  std::size_t replicas = 0;  // 0: the command's own default
  std::optional<double> horizon_t;
  std::optional<std::uint64_t> horizon_n;
  std::optional<std::uint32_t> window;
  std::string out;  // empty: standard output
  Format format = Format::Text;
  unsigned threads = 1;

  // Command-specific settings.
  std::string mode = "first";  // simulate: first|full
  std::string edge;            // analytic: "i,j"
  std::string edge2;
  std::vector<double> t_grid;  // clt
  std::string scale = "auto";  // clt: auto|urn|exact
  std::string samples_out;     // clt
  std::string sequence = "geometric";  // urns: geometric|double_exp|list
  double ratio = 0.5;
  std::vector<double> lambdas;
  std::vector<double> block;  // urns: evaluate one respect factor
  std::optional<double> tail;
  std::size_t blocks = 0;  // 0: the command's own default
  std::size_t k_max = 6;
  std::size_t audit_states = 0;
  std::string suite = "all";
};

/// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitToleranceFailure = 1;
constexpr int kExitConfigError = 2;

/// Runs one configured command. Configuration problems are reported on
/// `err` with the offending field named and give kExitConfigError.
int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv (subcommand style) and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// verify: PASS/FAIL lines, kExitToleranceFailure when any check fails.
int run_verify(const RunConfig& cfg, std::ostream& out);

}  // namespace eeg::cli
