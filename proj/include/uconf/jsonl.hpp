#pragma once

#include <string>

#include "uconf/uncertain_log.hpp"

namespace uconf {

/*
 * JSON-lines interchange for simple uncertain logs, one trace per line:
 *
 *   {"case":"case1","events":[{"id":"case1.1","activities":["A","B"],
 *     "t_min":"2011-12-05T00:00:00.000+00:00","t_max":"...","indeterminate":false}]}
 *
 * Readers also accept a bare array of events as a line (case = "trace<N>"),
 * epoch milliseconds for t_min/t_max, and a missing t_max (= t_min) or missing
 * "indeterminate" (= false). Blank lines are skipped. Writers always emit the
 * canonical form above.
 */
SimpleUncertainLog read_jsonl(const std::string& text);
std::string write_jsonl(const SimpleUncertainLog& log);

} // namespace uconf
