#pragma once

#include <string>
#include <vector>

#include "uconf/uncertain_log.hpp"

namespace uconf {

/*
 * XES with uncertainty meta-attributes.
 *
 * Every event keeps plain XES attributes that any importer understands
 * (concept:name, time:timestamp, identity:id). Uncertain events add one
 * container; only the uncertain aspects appear in it:
 *
 *   <event>
 *     <id key="identity:id" value="case1.2"/>
 *     <string key="concept:name" value="B"/>             fallback: least activity
 *     <date key="time:timestamp" value="..."/>            fallback: interval midpoint
 *     <container key="uncertainty:entry">
 *       <list key="uncertainty:discrete">
 *         <values>
 *           <string key="concept:name" value="B"/>
 *           <string key="concept:name" value="C"/>
 *         </values>
 *       </list>
 *       <date key="uncertainty:timestamp_min" value="..."/>
 *       <date key="uncertainty:timestamp_max" value="..."/>
 *       <boolean key="uncertainty:indeterminacy" value="true"/>
 *     </container>
 *   </event>
 *
 * Weakly uncertain documents use the same container with probabilities:
 * list items carry a nested <float key="uncertainty:probability">, possible
 * cases go in list "uncertainty:case_discrete", discrete timestamps in list
 * "uncertainty:timestamp_discrete", a normal timestamp in container
 * "uncertainty:timestamp_normal" (date "uncertainty:mean", float
 * "uncertainty:stddev" in milliseconds), and the probability that the event
 * happened in float "uncertainty:existence".
 */

// Throws parse_error on malformed XML and schema_error (with trace/event
// position) when an uncertainty container breaks an invariant.
SimpleUncertainLog import_xes(const std::string& xml);

// Canonical serialization; import_xes(export_xes(log)) == log.
std::string export_xes(const SimpleUncertainLog& log);

struct WeakTrace {
    CaseId case_id;
    std::vector<WeaklyUncertainEvent> events;
};

std::vector<WeakTrace> import_xes_weak(const std::string& xml);

// Format chosen by extension: ".xes" or ".jsonl"/".json".
SimpleUncertainLog load_log_file(const std::string& path);
void save_log_file(const SimpleUncertainLog& log, const std::string& path);

} // namespace uconf
