// SPDX-License-Identifier: Apache-2.0

#ifndef SLITRES_COMMANDS_HPP
#define SLITRES_COMMANDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "slitres/config.hpp"

namespace slitres
{

inline constexpr const char *version = "0.1.0";

inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_solver = 3;
inline constexpr int exit_validation = 4;

enum class LogLevel
{
  quiet = 0,
  info = 1,
  debug = 2
};

// SLITRES_LOG = quiet | info | debug (default quiet). Messages go to stderr.
LogLevel log_level();
void log_message(LogLevel level, const std::string &msg);

// Round-trip representation (17 significant digits).
std::string fmt17(double x);

struct CommandResult
{
  std::string text;
  int exit_code = exit_ok;
};

CommandResult cmd_resonances(const RunConfig &cfg);
CommandResult cmd_kernel(cd k, double h, int m, int n, std::optional<double> D, Backend backend,
                         Parity parity = Parity::even, const QuadratureConfig &quad = {});
CommandResult cmd_alpha(int M_modes);

// Sweep of the single-slit (or configured geometry) resonance for Fabry-Perot
// index fp_range[0], branch 1, over the given slit widths. Returns CSV.
CommandResult cmd_validate(const RunConfig &cfg, const std::vector<double> &h_list, int jobs);

std::vector<double> parse_number_list(const std::string &s);

}  // namespace slitres

#endif  // SLITRES_COMMANDS_HPP
