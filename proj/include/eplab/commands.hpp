#pragma once

// ep_lab command-line front end. Exit codes: 0 success, 1 evaluation or
// validation failure, 2 usage error.

#include <optional>
#include <ostream>
#include <string_view>

namespace eplab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Decimal string to a positive finite tolerance; nullopt otherwise.
std::optional<double> parse_tolerance(std::string_view text);

/// Runs one command line. `env_tol` is the value of EP_LAB_TOL, if set.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        std::optional<std::string_view> env_tol = std::nullopt);

}  // namespace eplab::cli
