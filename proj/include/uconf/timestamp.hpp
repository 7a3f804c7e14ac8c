#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace uconf {

// Milliseconds since the Unix epoch, UTC. Only the total order matters to the algorithms.
using Timestamp = std::int64_t;

inline constexpr Timestamp kMillisPerDay = 86'400'000;

// Accepts YYYY-MM-DD[THH:MM[:SS[.fff]]][Z|(+|-)HH[:]MM]. Throws parse_error.
Timestamp parse_iso8601(std::string_view text);

// Canonical form used by every writer: 2011-12-05T00:00:00.000+00:00
std::string format_iso8601(Timestamp t);

} // namespace uconf
