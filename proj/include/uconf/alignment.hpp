#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uconf/petri.hpp"
#include "uconf/uncertain_log.hpp"

namespace uconf {

// One side of a move: the fired transition and its label (nullopt for tau).
struct Step {
    std::optional<Activity> label;
    TransitionId transition;

    friend bool operator==(const Step&, const Step&) = default;
};

/*
 * A move pairs a log-net step with a model step; nullopt on either side is
 * the "no move" symbol. Invisible steps on the log side (skipping a ?-event
 * of a behavior net) are recorded too, so the log side replays on its net.
 */
struct Move {
    std::optional<Step> log;
    std::optional<Step> model;

    friend bool operator==(const Move&, const Move&) = default;
};

enum class MoveClass { synchronous, model_invisible, model_visible, log_invisible, log_visible };

MoveClass classify(const Move& m);

struct Alignment {
    std::vector<Move> moves;

    // Visible log labels, no-moves dropped.
    ActivitySequence log_projection() const;
    // Model transition IDs in firing order.
    std::vector<TransitionId> model_firing_sequence() const;
    // Log transition IDs in firing order (including invisible ones).
    std::vector<TransitionId> log_firing_sequence() const;

    friend bool operator==(const Alignment&, const Alignment&) = default;
};

// Non-negative cost per move class. Invisible log steps are always free.
struct CostFunction {
    std::uint32_t synchronous = 0;
    std::uint32_t model_visible = 1;
    std::uint32_t model_invisible = 0;
    std::uint32_t log_move = 1;

    std::uint32_t of(MoveClass c) const;

    // The standard cost function: 0 / 1 / 0 / 1.
    static CostFunction standard() { return {}; }

    friend bool operator==(const CostFunction&, const CostFunction&) = default;
};

std::uint64_t cost(const Alignment& a, const CostFunction& c);

// Admissible estimate of the remaining cost from a product-net marking given
// as token counts indexed like product(log_net, model).net.places().
using Heuristic = std::function<std::uint32_t(std::span<const std::uint8_t>)>;

struct AlignOptions {
    CostFunction cost = CostFunction::standard();
    // Maximum number of distinct product markings discovered before giving up.
    std::size_t state_cap = 1'000'000;
    // Empty means zero (uniform-cost search).
    Heuristic heuristic;
};

/*
 * Cost-optimal alignment of a log net (event net or behavior net) against a
 * model, found by A* over the reachability graph of their product.
 *
 * Ties are broken deterministically: successors are generated in order of
 * move class (synchronous, invisible, visible model, log) then transition ID,
 * and among equal-priority queue entries the earlier one is expanded first.
 *
 * Throws unreachable_final_marking_error when the final marking cannot be
 * reached and explosion_error when options.state_cap is exceeded.
 */
Alignment align(const SystemNet& log_net, const SystemNet& model, const AlignOptions& options = {});
Alignment align(const SystemNet& log_net, const SystemNet& model, const CostFunction& c);

struct BoundResult {
    std::uint64_t cost = 0;
    ActivitySequence witness;
    Alignment alignment;
};

// Minimum optimal-alignment cost over all realizations, via the behavior net.
BoundResult lower_bound(const SimpleUncertainTrace& trace, const SystemNet& model, const AlignOptions& options = {});

// Maximum optimal-alignment cost over all realizations, by enumeration.
// Throws explosion_error if there are more than `cap` realizations.
BoundResult upper_bound(const SimpleUncertainTrace& trace, const SystemNet& model, std::size_t cap,
                        const AlignOptions& options = {});

struct ConformanceBounds {
    std::uint64_t lower = 0;
    std::uint64_t upper = 0;
    ActivitySequence lower_witness;
    ActivitySequence upper_witness;
    // Number of realizations that were aligned.
    std::size_t realization_count = 0;
};

// Aligns every realization separately; witnesses are the first realization (in
// lexicographic order) attaining each extreme.
ConformanceBounds bounds_bruteforce(const SimpleUncertainTrace& trace, const SystemNet& model, std::size_t cap,
                                    const AlignOptions& options = {});

// Two-row rendering: log labels over model labels, ">>" for no move, "τ" for invisible.
std::string render(const Alignment& a);

// [{"log": "A"|null, "log_transition": ..., "model": "A"|null, "model_transition": ..., "class": ...}, ...]
std::string to_json(const Alignment& a);

std::string to_string(MoveClass c);

} // namespace uconf
