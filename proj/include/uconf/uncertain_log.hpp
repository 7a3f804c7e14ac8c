#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "uconf/petri.hpp"
#include "uconf/timestamp.hpp"

namespace uconf {

using EventId = std::string;
using CaseId = std::string;

// "!" (the event surely happened) or "?" (it may not have).
enum class Indeterminacy { determinate, indeterminate };

struct CertainEvent {
    EventId id;
    CaseId case_id;
    Activity activity;
    Timestamp timestamp{};
};

struct StronglyUncertainEvent {
    EventId id;
    std::set<CaseId> case_ids;
    std::set<Activity> activities;
    std::set<Timestamp> timestamps;
    Indeterminacy indeterminacy = Indeterminacy::determinate;

    friend bool operator==(const StronglyUncertainEvent&, const StronglyUncertainEvent&) = default;
};

struct WeakOutcome {
    CaseId case_id;
    Activity activity;
    Timestamp timestamp{};

    friend auto operator<=>(const WeakOutcome&, const WeakOutcome&) = default;
};

// Continuous timestamp distribution, kept as metadata. `support` optionally
// truncates it to a finite interval, which is what weak_to_strong needs.
struct ContinuousTimestamp {
    enum class Shape { normal, uniform };
    Shape shape = Shape::normal;
    Timestamp mean{};
    double stddev_ms = 0.0;
    std::optional<std::pair<Timestamp, Timestamp>> support;
};

struct WeaklyUncertainEvent {
    EventId id;
    // Joint probability mass over (case, activity, timestamp); values in (0,1], sum <= 1.
    std::map<WeakOutcome, double> mass;
    // When set, the timestamp coordinate of `mass` holds the mean only.
    std::optional<ContinuousTimestamp> continuous_time;

    // Builds the joint mass assuming the three attributes are independent and
    // the event occurs with probability `existence`.
    static WeaklyUncertainEvent from_independent(EventId id, const std::map<CaseId, double>& cases,
                                                 const std::map<Activity, double>& activities,
                                                 const std::map<Timestamp, double>& timestamps,
                                                 double existence = 1.0);
};

// Tolerance on the total mass when deciding between ! (sum == 1) and ? (sum < 1).
inline constexpr double kMassTolerance = 1e-9;

struct SimpleUncertainEvent {
    EventId id;
    std::set<Activity> activities;
    Timestamp t_min{};
    Timestamp t_max{};
    Indeterminacy indeterminacy = Indeterminacy::determinate;

    bool indeterminate() const { return indeterminacy == Indeterminacy::indeterminate; }
    // Exactly one activity, a point timestamp, and surely happened.
    bool certain() const { return activities.size() == 1 && t_min == t_max && !indeterminate(); }

    friend bool operator==(const SimpleUncertainEvent&, const SimpleUncertainEvent&) = default;
};

struct SimpleUncertainTrace {
    CaseId case_id;
    std::vector<SimpleUncertainEvent> events;

    friend bool operator==(const SimpleUncertainTrace&, const SimpleUncertainTrace&) = default;
};

using SimpleUncertainLog = std::vector<SimpleUncertainTrace>;

// Unique IDs, non-empty activity sets, t_min <= t_max. Throws invalid_trace_error.
void validate(const SimpleUncertainTrace& trace);

// True iff `a` is known to happen before `b`: t_max(a) < t_min(b).
inline bool precedes(const SimpleUncertainEvent& a, const SimpleUncertainEvent& b) { return a.t_max < b.t_min; }

/*
 * Supports of the positive-mass outcomes, per coordinate. The flag is ! when
 * the mass sums to 1 (within kMassTolerance) and ? when it sums to less.
 * Throws invalid_distribution_error for sums above 1 or values outside (0,1],
 * and unsupported_distribution_error for a continuous timestamp without a
 * finite support.
 */
std::vector<StronglyUncertainEvent> weak_to_strong(const std::vector<WeaklyUncertainEvent>& log);

// Groups events by the case chosen by `assignment`; traces are ordered by case
// ID, events keep log order. t_min/t_max are the extremes of each timestamp set.
SimpleUncertainLog simplify(const std::vector<StronglyUncertainEvent>& log,
                            const std::map<EventId, CaseId>& assignment);

/*
 * All untimed realizations of a trace: keep every !-event and any subset of
 * ?-events, pick one activity each, and order them along any linear extension
 * of `precedes`. Throws explosion_error once more than `cap` distinct
 * sequences have been found.
 */
std::set<ActivitySequence> realizations(const SimpleUncertainTrace& trace, std::size_t cap);

// Whether `certain` is a realization of `uncertain`, decided by bipartite
// matching between compatible events.
bool is_log_realization(const std::vector<CertainEvent>& certain,
                        const std::vector<StronglyUncertainEvent>& uncertain);

} // namespace uconf
