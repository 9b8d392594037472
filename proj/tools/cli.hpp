#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace flatstrata::cli {

inline constexpr int kUsage = 64;
inline constexpr int kBadInput = 65;
inline constexpr int kInternal = 70;
/// Largest exit code used for failed claims.
inline constexpr int kClaimCap = 63;

/// Runs one command. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flatstrata::cli
