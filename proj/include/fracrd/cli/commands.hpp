#pragma once

#include <iosfwd>

namespace fracrd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // solver or certificate failure
inline constexpr int kExitConfig = 2;   // bad flags or configuration

/// Entry point of the `fracrd` executable; never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fracrd::cli
