#ifndef LCS_TOOLS_CLI_HPP_
#define LCS_TOOLS_CLI_HPP_

#include <iosfwd>

namespace lcs::cli {

// Exit codes: 0 completed with an answer, 1 crosscheck found a disagreement,
// 2 usage error, 3 capacity or inconclusive result, 4 model parse error.
inline constexpr int kOk = 0;
inline constexpr int kDisagreement = 1;
inline constexpr int kUsage = 2;
inline constexpr int kCapacity = 3;
inline constexpr int kParse = 4;

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace lcs::cli

#endif  // LCS_TOOLS_CLI_HPP_
