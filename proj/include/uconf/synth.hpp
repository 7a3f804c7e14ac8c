#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "uconf/petri.hpp"
#include "uconf/timestamp.hpp"
#include "uconf/uncertain_log.hpp"

namespace uconf {

struct TimedEvent {
    Activity activity;
    Timestamp time{};

    friend bool operator==(const TimedEvent&, const TimedEvent&) = default;
};

struct TimedTrace {
    CaseId case_id;
    std::vector<TimedEvent> events;

    friend bool operator==(const TimedTrace&, const TimedTrace&) = default;
};

using TimedLog = std::vector<TimedTrace>;

// 2011-12-05T00:00:00Z
inline constexpr Timestamp kPlayoutOrigin = 1'323'043'200'000;

// "A".."Z", "AA", "AB", ... for index 0, 1, ...
std::string activity_name(std::size_t index);

/*
 * Random block-structured workflow net with exactly n visible transitions.
 * Blocks are built recursively: a leaf is one transition with a fresh label;
 * an inner block splits n into two non-empty parts and composes them in
 * sequence, exclusive choice, or parallel (tau split/join), each with equal
 * probability. No loops. Place "source" is initially marked, "sink" is final.
 */
SystemNet generate_model(std::size_t n, std::uint64_t seed);

// Visible labels of the net in transition order, without duplicates.
std::vector<Activity> alphabet(const SystemNet& net);

struct PlayoutOptions {
    Timestamp origin = kPlayoutOrigin;
    Timestamp spacing = kMillisPerDay;
    std::size_t step_cap = 10'000;
};

/*
 * Random complete runs: at every step one enabled transition is picked
 * uniformly. Events get timestamps origin, origin + spacing, ... Cases are
 * named "case1", "case2", ... Throws playout_error on a dead marking that is
 * not final or when step_cap is exceeded.
 */
TimedLog playout(const SystemNet& model, std::size_t num_traces, std::uint64_t seed,
                 const PlayoutOptions& options = {});

struct DeviationParams {
    double wrong_activity_prob = 0.20; // per event
    double swap_prob = 0.20;           // per pair of consecutive events
    double extra_event_prob = 0.40;    // per trace
};

struct DeviationStats {
    std::size_t wrong_activities = 0;
    std::size_t swaps = 0;
    std::size_t extra_events = 0;
};

/*
 * Noise on a certain log, each trace from its own stream. Wrong activities
 * are drawn uniformly from the rest of `alphabet`; a swap exchanges the
 * timestamps (hence the order) of two neighbours; an extra event gets a
 * uniform label and position. Traces touched by a deviation are re-timed
 * with one-day spacing from their first timestamp.
 */
TimedLog inject_deviations(const TimedLog& log, const DeviationParams& params, const std::vector<Activity>& alphabet,
                           std::uint64_t seed, DeviationStats* stats = nullptr);

struct UncertaintyParams {
    double p = 0.0;
    std::vector<Activity> activity_pool;
    Timestamp interval_radius = 3 * kMillisPerDay / 2;
};

/*
 * Lifts a certain log to simple uncertain traces. Every event owns a stream
 * with four draws in fixed order: activity, timestamp, indeterminacy, and the
 * index of the alternative activity. A kind of uncertainty is added iff its
 * draw is below p, so for one seed the result at a larger p refines the
 * result at a smaller p event by event. Event IDs are "<case>.<position>".
 */
SimpleUncertainLog inject_uncertainty(const TimedLog& log, const UncertaintyParams& params, std::uint64_t seed);

} // namespace uconf
