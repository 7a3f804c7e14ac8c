#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace uconf::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitExplosion = 3;
inline constexpr int kExitAlignment = 4;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace uconf::cli
