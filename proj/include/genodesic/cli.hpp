#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace genodesic::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args` excludes the program name. Normal output goes
/// to `out`; diagnostics, including the one-line "error <CODE>: ..." record,
/// go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace genodesic::cli
