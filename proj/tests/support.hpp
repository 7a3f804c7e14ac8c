#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "uconf/alignment.hpp"
#include "uconf/petri.hpp"
#include "uconf/rng.hpp"
#include "uconf/uncertain_log.hpp"

namespace uconf::test {

Timestamp day(int d); // 2011-12-<d> midnight UTC

SimpleUncertainEvent event(const std::string& id, std::set<Activity> acts, Timestamp lo, Timestamp hi,
                           bool indeterminate = false);

// The five-event running example: A, {B,C}, D over an interval, {A,C}, E?.
SimpleUncertainTrace running_example();

// A -> B -> ... as a workflow net over places "i", "p1", ..., "o".
SystemNet sequence_model(const ActivitySequence& labels);

// A, then (B or C) in parallel with D, then either A and back to the parallel
// block, or E.
SystemNet running_example_model();

// Random simple uncertain trace over activities A..D with up to max_events.
SimpleUncertainTrace random_trace(Rng& rng, std::size_t max_events, double p);

// ---- oracles ----------------------------------------------------------------

// Realizations by sampling each event's timestamp from the t_min values that
// fall into its interval, sorting, and permuting ties.
std::set<ActivitySequence> realizations_oracle(const SimpleUncertainTrace& trace);

// Edges (u,w) with no path u -> ... -> w of length >= 2 (Floyd-Warshall).
std::set<std::pair<std::size_t, std::size_t>> reduction_oracle(std::size_t n,
                                                               const std::set<std::pair<std::size_t, std::size_t>>& edges);

// Every complete firing sequence of an acyclic net as (visible labels, tau count).
std::vector<std::pair<ActivitySequence, std::size_t>> complete_runs(const SystemNet& net, std::size_t depth_cap = 64);

// Minimum alignment cost of `trace` against the model by edit distance over
// every complete run.
std::uint64_t alignment_oracle(const ActivitySequence& trace, const SystemNet& model,
                               const CostFunction& c = CostFunction::standard());

// Empty string when the alignment replays on both nets and its log
// projection matches the fired visible log transitions; a reason otherwise.
std::string check_alignment(const Alignment& a, const SystemNet& log_net, const SystemNet& model);

} // namespace uconf::test
