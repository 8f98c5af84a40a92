#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lgate/types.hpp"

namespace lgate::cli {

inline constexpr const char* tool_version = "0.1.0";

enum ExitCode : int {
    exit_ok = 0,
    exit_error = 1,           // usage, parse or runtime error
    exit_inadmissible = 2,
    exit_inconclusive = 3,    // also: solve finished but could not verify its residuals
    exit_tolerance = 4,       // requested tol needs H above --h-max
};

/// Runs the command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "a:b:step" -> a, a + step, ..., b (inclusive when b - a is a whole
/// number of steps). Throws std::invalid_argument on malformed input.
std::vector<double> parse_t_range(std::string_view text);

/// Header "t,re,im,err_bound", LF line ends, shortest round-trip numbers.
std::string format_csv(const TimeSignal& signal);

/// Reads "t,re[,im...]" rows; rows whose first field is not a number
/// (a header) are skipped.
TimeSignal read_signal_csv(std::istream& in);

}  // namespace lgate::cli
