#include "uconf/jsonl.hpp"

#include <sstream>

#include "json.hpp"
#include "uconf/errors.hpp"

namespace uconf {

using nlohmann::json;

namespace {

Timestamp read_time(const json& v, const std::string& where) {
    if (v.is_number_integer()) return v.get<Timestamp>();
    if (v.is_string()) return parse_iso8601(v.get<std::string>());
    throw schema_error(where + ": timestamp must be an ISO-8601 string or epoch milliseconds");
}

SimpleUncertainEvent read_event(const json& j, const std::string& where) {
    if (!j.is_object()) throw schema_error(where + ": event must be an object");
    SimpleUncertainEvent e;
    if (!j.contains("id") || !j["id"].is_string()) throw schema_error(where + ": missing string field 'id'");
    e.id = j["id"].get<std::string>();
    const std::string at = where + " event '" + e.id + "'";
    if (!j.contains("activities") || !j["activities"].is_array())
        throw schema_error(at + ": missing list field 'activities'");
    for (const auto& a : j["activities"]) {
        if (!a.is_string()) throw schema_error(at + ": activities must be strings");
        e.activities.insert(a.get<std::string>());
    }
    if (e.activities.empty()) throw schema_error(at + ": empty activity list");
    if (!j.contains("t_min")) throw schema_error(at + ": missing field 't_min'");
    e.t_min = read_time(j["t_min"], at);
    e.t_max = j.contains("t_max") ? read_time(j["t_max"], at) : e.t_min;
    if (e.t_min > e.t_max) throw schema_error(at + ": t_min > t_max");
    if (j.contains("indeterminate")) {
        if (!j["indeterminate"].is_boolean()) throw schema_error(at + ": 'indeterminate' must be boolean");
        if (j["indeterminate"].get<bool>()) e.indeterminacy = Indeterminacy::indeterminate;
    }
    return e;
}

} // namespace

SimpleUncertainLog read_jsonl(const std::string& text) {
    SimpleUncertainLog log;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string where = "line " + std::to_string(lineno);
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw parse_error(where + ": " + e.what());
        }
        SimpleUncertainTrace trace;
        const json* events = nullptr;
        if (j.is_array()) {
            trace.case_id = "trace" + std::to_string(log.size() + 1);
            events = &j;
        } else if (j.is_object() && j.contains("events") && j["events"].is_array()) {
            trace.case_id = j.value("case", "trace" + std::to_string(log.size() + 1));
            events = &j["events"];
        } else {
            throw schema_error(where + ": expected an object with 'events' or an array of events");
        }
        for (const auto& ev : *events) trace.events.push_back(read_event(ev, where));
        try {
            validate(trace);
        } catch (const invalid_trace_error& e) {
            throw schema_error(where + ": " + e.what());
        }
        log.push_back(std::move(trace));
    }
    return log;
}

std::string write_jsonl(const SimpleUncertainLog& log) {
    std::string out;
    for (const auto& trace : log) {
        json events = json::array();
        for (const auto& e : trace.events) {
            json ev;
            ev["id"] = e.id;
            ev["activities"] = std::vector<std::string>(e.activities.begin(), e.activities.end());
            ev["t_min"] = format_iso8601(e.t_min);
            ev["t_max"] = format_iso8601(e.t_max);
            ev["indeterminate"] = e.indeterminate();
            events.push_back(std::move(ev));
        }
        json line;
        line["case"] = trace.case_id;
        line["events"] = std::move(events);
        out += line.dump();
        out += '\n';
    }
    return out;
}

} // namespace uconf
