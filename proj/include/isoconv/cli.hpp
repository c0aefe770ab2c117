#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isoconv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

inline constexpr int kSchemaVersion = 1;

// Runs one subcommand. args excludes the program name.
// Returns 0 on success, 1 when an asserted inequality fails, 2 on usage or
// configuration errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isoconv::cli
