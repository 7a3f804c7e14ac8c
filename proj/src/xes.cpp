#include "uconf/xes.hpp"

#include <optional>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "detail/xml_util.hpp"
#include "uconf/errors.hpp"
#include "uconf/jsonl.hpp"

namespace uconf {

namespace pt = boost::property_tree;

namespace {

const char* const kEntry = "uncertainty:entry";
const char* const kDiscrete = "uncertainty:discrete";
const char* const kTimestampMin = "uncertainty:timestamp_min";
const char* const kTimestampMax = "uncertainty:timestamp_max";
const char* const kIndeterminacy = "uncertainty:indeterminacy";
const char* const kProbability = "uncertainty:probability";
const char* const kCaseDiscrete = "uncertainty:case_discrete";
const char* const kTimestampDiscrete = "uncertainty:timestamp_discrete";
const char* const kTimestampNormal = "uncertainty:timestamp_normal";
const char* const kExistence = "uncertainty:existence";

bool is_attribute_tag(const std::string& tag) {
    return tag == "string" || tag == "date" || tag == "int" || tag == "float" || tag == "boolean" || tag == "id" ||
           tag == "list" || tag == "container";
}

struct attribute {
    std::string type;
    const pt::ptree* node;

    std::string key() const { return node->get<std::string>("<xmlattr>.key", ""); }
    std::optional<std::string> value() const {
        if (auto v = node->get_optional<std::string>("<xmlattr>.value")) return *v;
        return std::nullopt;
    }
};

// Direct attribute children of an element, in document order.
std::vector<attribute> attributes_of(const pt::ptree& element) {
    std::vector<attribute> out;
    for (const auto& [tag, child] : element) {
        if (is_attribute_tag(tag)) out.push_back({tag, &child});
    }
    return out;
}

std::optional<attribute> find(const pt::ptree& element, const std::string& key) {
    for (const auto& a : attributes_of(element)) {
        if (a.key() == key) return a;
    }
    return std::nullopt;
}

// Items of a list attribute: children of <values> (XES 2.0) or direct children.
std::vector<attribute> list_items(const attribute& list) {
    if (auto values = list.node->get_child_optional("values")) return attributes_of(*values);
    return attributes_of(*list.node);
}

class locus {
  public:
    locus(std::size_t trace, std::size_t event) : trace_(trace), event_(event) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw schema_error("trace " + std::to_string(trace_) + ", event " + std::to_string(event_) + ": " + what);
    }

    std::string need_value(const attribute& a) const {
        auto v = a.value();
        if (!v) fail("attribute '" + a.key() + "' has no value");
        return *v;
    }

    Timestamp date(const attribute& a) const {
        if (a.type != "date") fail("attribute '" + a.key() + "' must be a date");
        try {
            return parse_iso8601(need_value(a));
        } catch (const parse_error& e) {
            fail(e.what());
        }
    }

    double number(const attribute& a) const {
        try {
            return std::stod(need_value(a));
        } catch (const std::logic_error&) {
            fail("attribute '" + a.key() + "' is not a number");
        }
    }

    bool boolean(const attribute& a) const {
        std::string v = need_value(a);
        if (v == "true") return true;
        if (v == "false") return false;
        fail("attribute '" + a.key() + "' is not a boolean");
    }

  private:
    std::size_t trace_, event_;
};

pt::ptree parse_document(const std::string& xml) {
    pt::ptree tree;
    std::istringstream in(xml);
    try {
        pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error& e) {
        throw parse_error(std::string("malformed XES: ") + e.what());
    }
    if (!tree.get_child_optional("log")) throw parse_error("XES document has no <log> root element");
    return tree;
}

std::string case_name(const pt::ptree& trace, std::size_t index) {
    if (auto a = find(trace, "concept:name"); a && a->value()) return *a->value();
    return "trace" + std::to_string(index);
}

std::string event_name(const pt::ptree& event, const std::string& case_id, std::size_t index) {
    if (auto a = find(event, "identity:id"); a && a->value()) return *a->value();
    return case_id + "." + std::to_string(index);
}

template <typename Visit>
void for_each_event(const pt::ptree& tree, Visit visit) {
    std::size_t ti = 0;
    for (const auto& [tag, trace] : tree.get_child("log")) {
        if (tag != "trace") continue;
        ++ti;
        const std::string case_id = case_name(trace, ti);
        std::size_t ei = 0;
        visit(case_id, nullptr, locus(ti, 0), 0);
        for (const auto& [etag, event] : trace) {
            if (etag != "event") continue;
            ++ei;
            visit(case_id, &event, locus(ti, ei), ei);
        }
    }
}

SimpleUncertainEvent read_strong_event(const pt::ptree& event, const std::string& case_id, std::size_t index,
                                       const locus& at) {
    SimpleUncertainEvent e;
    e.id = event_name(event, case_id, index);
    auto name = find(event, "concept:name");
    auto time = find(event, "time:timestamp");
    auto entry = find(event, kEntry);
    const pt::ptree* box = entry ? entry->node : nullptr;

    if (auto list = box ? find(*box, kDiscrete) : std::nullopt) {
        for (const auto& item : list_items(*list)) e.activities.insert(at.need_value(item));
        if (e.activities.empty()) at.fail("empty activity list");
    } else if (name) {
        e.activities.insert(at.need_value(*name));
    } else {
        at.fail("no activity");
    }

    auto lo = box ? find(*box, kTimestampMin) : std::nullopt;
    auto hi = box ? find(*box, kTimestampMax) : std::nullopt;
    auto discrete_times = box ? find(*box, kTimestampDiscrete) : std::nullopt;
    if (lo || hi) {
        if (!lo || !hi) at.fail("timestamp interval needs both bounds");
        e.t_min = at.date(*lo);
        e.t_max = at.date(*hi);
        if (e.t_min > e.t_max) at.fail("t_min > t_max");
    } else if (discrete_times) {
        auto items = list_items(*discrete_times);
        if (items.empty()) at.fail("empty timestamp list");
        e.t_min = e.t_max = at.date(items.front());
        for (const auto& item : items) {
            Timestamp t = at.date(item);
            e.t_min = std::min(e.t_min, t);
            e.t_max = std::max(e.t_max, t);
        }
    } else if (time) {
        e.t_min = e.t_max = at.date(*time);
    } else {
        at.fail("no timestamp");
    }

    if (auto flag = box ? find(*box, kIndeterminacy) : std::nullopt; flag && at.boolean(*flag))
        e.indeterminacy = Indeterminacy::indeterminate;
    if (auto existence = box ? find(*box, kExistence) : std::nullopt; existence && at.number(*existence) < 1.0)
        e.indeterminacy = Indeterminacy::indeterminate;
    return e;
}

template <typename Key, typename Parse>
std::map<Key, double> read_distribution(const attribute& list, const locus& at, Parse parse) {
    std::map<Key, double> out;
    auto items = list_items(list);
    if (items.empty()) at.fail("empty list '" + list.key() + "'");
    std::size_t with_probability = 0;
    for (const auto& item : items) {
        if (auto p = find(*item.node, kProbability)) {
            out[parse(item)] += at.number(*p);
            ++with_probability;
        } else {
            out[parse(item)] += 0.0;
        }
    }
    if (with_probability == 0) {
        for (auto& [k, v] : out) v = 1.0 / static_cast<double>(out.size());
    } else if (with_probability != items.size()) {
        at.fail("list '" + list.key() + "' mixes items with and without probability");
    }
    return out;
}

WeaklyUncertainEvent read_weak_event(const pt::ptree& event, const std::string& case_id, std::size_t index,
                                     const locus& at) {
    const std::string id = event_name(event, case_id, index);
    auto name = find(event, "concept:name");
    auto time = find(event, "time:timestamp");
    auto entry = find(event, kEntry);
    const pt::ptree* box = entry ? entry->node : nullptr;
    auto in_box = [&](const char* key) { return box ? find(*box, key) : std::nullopt; };
    auto as_string = [&](const attribute& a) { return at.need_value(a); };
    auto as_date = [&](const attribute& a) { return at.date(a); };

    std::map<CaseId, double> cases{{case_id, 1.0}};
    if (auto l = in_box(kCaseDiscrete)) cases = read_distribution<CaseId>(*l, at, as_string);

    std::map<Activity, double> activities;
    if (auto l = in_box(kDiscrete)) {
        activities = read_distribution<Activity>(*l, at, as_string);
    } else if (name) {
        activities[at.need_value(*name)] = 1.0;
    } else {
        at.fail("no activity");
    }

    std::map<Timestamp, double> times;
    std::optional<ContinuousTimestamp> continuous;
    auto lo = in_box(kTimestampMin);
    auto hi = in_box(kTimestampMax);
    if ((lo != std::nullopt) != (hi != std::nullopt)) at.fail("timestamp interval needs both bounds");
    std::optional<std::pair<Timestamp, Timestamp>> support;
    if (lo) {
        support = std::make_pair(at.date(*lo), at.date(*hi));
        if (support->first > support->second) at.fail("t_min > t_max");
    }
    if (auto l = in_box(kTimestampDiscrete)) {
        times = read_distribution<Timestamp>(*l, at, as_date);
    } else if (auto normal = in_box(kTimestampNormal)) {
        auto mean = find(*normal->node, "uncertainty:mean");
        auto stddev = find(*normal->node, "uncertainty:stddev");
        if (!mean || !stddev) at.fail("normal timestamp needs uncertainty:mean and uncertainty:stddev");
        continuous = ContinuousTimestamp{ContinuousTimestamp::Shape::normal, at.date(*mean), at.number(*stddev), support};
    } else if (support) {
        continuous = ContinuousTimestamp{ContinuousTimestamp::Shape::uniform,
                                         support->first + (support->second - support->first) / 2, 0.0, support};
    } else if (time) {
        times[at.date(*time)] = 1.0;
    } else {
        at.fail("no timestamp");
    }
    if (continuous) times = {{continuous->mean, 1.0}};

    double existence = 1.0;
    if (auto ex = in_box(kExistence)) {
        existence = at.number(*ex);
    } else if (auto flag = in_box(kIndeterminacy); flag && at.boolean(*flag)) {
        at.fail("indeterminate event needs uncertainty:existence in a weakly uncertain log");
    }
    if (!(existence > 0.0) || existence > 1.0) at.fail("uncertainty:existence must lie in (0,1]");

    auto ev = WeaklyUncertainEvent::from_independent(id, cases, activities, times, existence);
    ev.continuous_time = continuous;
    return ev;
}

std::string ends_with_lower(const std::string& path) {
    auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot);
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext;
}

} // namespace

SimpleUncertainLog import_xes(const std::string& xml) {
    pt::ptree tree = parse_document(xml);
    SimpleUncertainLog log;
    for_each_event(tree, [&](const std::string& case_id, const pt::ptree* event, const locus& at, std::size_t index) {
        if (!event) {
            log.push_back({case_id, {}});
            return;
        }
        log.back().events.push_back(read_strong_event(*event, case_id, index, at));
    });
    for (std::size_t i = 0; i < log.size(); ++i) {
        try {
            validate(log[i]);
        } catch (const invalid_trace_error& e) {
            throw schema_error("trace " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return log;
}

std::vector<WeakTrace> import_xes_weak(const std::string& xml) {
    pt::ptree tree = parse_document(xml);
    std::vector<WeakTrace> log;
    for_each_event(tree, [&](const std::string& case_id, const pt::ptree* event, const locus& at, std::size_t index) {
        if (!event) {
            log.push_back({case_id, {}});
            return;
        }
        log.back().events.push_back(read_weak_event(*event, case_id, index, at));
    });
    return log;
}

std::string export_xes(const SimpleUncertainLog& log) {
    using detail::xml_escape;
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<log xes.version=\"2.0\" xes.features=\"nested-attributes\" xmlns=\"http://www.xes-standard.org/\">\n";
    o << "  <extension name=\"Concept\" prefix=\"concept\" uri=\"http://www.xes-standard.org/concept.xesext\"/>\n";
    o << "  <extension name=\"Time\" prefix=\"time\" uri=\"http://www.xes-standard.org/time.xesext\"/>\n";
    o << "  <extension name=\"Identity\" prefix=\"identity\" uri=\"http://www.xes-standard.org/identity.xesext\"/>\n";
    for (const auto& trace : log) {
        o << "  <trace>\n";
        o << "    <string key=\"concept:name\" value=\"" << xml_escape(trace.case_id) << "\"/>\n";
        for (const auto& e : trace.events) {
            const Timestamp fallback_time = e.t_min + (e.t_max - e.t_min) / 2;
            o << "    <event>\n";
            o << "      <id key=\"identity:id\" value=\"" << xml_escape(e.id) << "\"/>\n";
            o << "      <string key=\"concept:name\" value=\"" << xml_escape(*e.activities.begin()) << "\"/>\n";
            o << "      <date key=\"time:timestamp\" value=\"" << format_iso8601(fallback_time) << "\"/>\n";
            if (!e.certain()) {
                o << "      <container key=\"" << kEntry << "\">\n";
                if (e.activities.size() > 1) {
                    o << "        <list key=\"" << kDiscrete << "\">\n";
                    o << "          <values>\n";
                    for (const auto& a : e.activities)
                        o << "            <string key=\"concept:name\" value=\"" << xml_escape(a) << "\"/>\n";
                    o << "          </values>\n";
                    o << "        </list>\n";
                }
                if (e.t_min != e.t_max) {
                    o << "        <date key=\"" << kTimestampMin << "\" value=\"" << format_iso8601(e.t_min) << "\"/>\n";
                    o << "        <date key=\"" << kTimestampMax << "\" value=\"" << format_iso8601(e.t_max) << "\"/>\n";
                }
                if (e.indeterminate()) o << "        <boolean key=\"" << kIndeterminacy << "\" value=\"true\"/>\n";
                o << "      </container>\n";
            }
            o << "    </event>\n";
        }
        o << "  </trace>\n";
    }
    o << "</log>\n";
    return o.str();
}

SimpleUncertainLog load_log_file(const std::string& path) {
    std::string ext = ends_with_lower(path);
    std::string text = detail::read_file(path);
    if (ext == ".xes") return import_xes(text);
    if (ext == ".jsonl" || ext == ".json" || ext == ".ndjson") return read_jsonl(text);
    throw parse_error("unknown log format for '" + path + "' (expected .xes or .jsonl)");
}

void save_log_file(const SimpleUncertainLog& log, const std::string& path) {
    std::string ext = ends_with_lower(path);
    if (ext == ".xes") {
        detail::write_file(path, export_xes(log));
    } else if (ext == ".jsonl" || ext == ".json" || ext == ".ndjson") {
        detail::write_file(path, write_jsonl(log));
    } else {
        throw error("unknown log format for '" + path + "' (expected .xes or .jsonl)");
    }
}

} // namespace uconf
