#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lossrisk::cli {

struct CliOptions {
  std::string command;  // eval | sensitivity | roblab | axioms
  std::optional<std::string> input;      // P&L file, one value per line
  std::optional<std::string> scenarios;  // scenario P&L file
  std::optional<std::string> catalog;
  std::optional<std::string> config;
  std::optional<std::string> out;        // stdout when absent
  std::optional<std::uint64_t> seed;
  std::string z_grid = "-10,5,1";        // "a,b,step", inclusive
  bool numeric = false;
  double tol = 1e-9;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;

// Each command writes its report to `out` and diagnostics to `err`. Hard
// errors throw lossrisk::Error.
void cmd_eval(const CliOptions& opt, std::ostream& out, std::ostream& err);
void cmd_sensitivity(const CliOptions& opt, std::ostream& out, std::ostream& err);
void cmd_roblab(const CliOptions& opt, std::ostream& out, std::ostream& err);
void cmd_axioms(const CliOptions& opt, std::ostream& out, std::ostream& err);

std::vector<double> parse_z_grid(const std::string& text);

// Dispatches on opt.command, writing to opt.out or `out`. Returns the exit
// code and reports hard errors on `err`.
int run(const CliOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace lossrisk::cli
