#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace uconf {

using PlaceId = std::string;
using TransitionId = std::string;
using Activity = std::string;

// A certain, untimed trace. Never contains tau.
using ActivitySequence = std::vector<Activity>;

// Multiset of places. Places with zero tokens are not stored.
class Marking {
  public:
    Marking() = default;
    Marking(std::initializer_list<PlaceId> places);

    void add(const PlaceId& place, unsigned count = 1);
    // Removes one token; returns false if the place holds none.
    bool remove_one(const PlaceId& place);

    unsigned count(const PlaceId& place) const;
    // Total number of tokens.
    std::size_t size() const;
    bool empty() const { return tokens_.empty(); }

    const std::map<PlaceId, unsigned>& tokens() const { return tokens_; }

    // Multiset union (sum of multiplicities).
    friend Marking operator+(const Marking& a, const Marking& b);
    friend bool operator==(const Marking&, const Marking&) = default;
    friend auto operator<=>(const Marking&, const Marking&) = default;

  private:
    std::map<PlaceId, unsigned> tokens_;
};

struct Transition {
    TransitionId id;
    std::optional<Activity> label; // nullopt: invisible (tau)

    bool visible() const { return label.has_value(); }
};

/*
 * Labeled Petri net with initial and final markings.
 *
 * Places and transitions are addressed by string ID; indices into places() and
 * transitions() are stable and are what preset()/postset() return. Arcs form a
 * set: adding the same arc twice has no effect.
 */
class SystemNet {
  public:
    std::size_t add_place(PlaceId id);
    std::size_t add_transition(TransitionId id, std::optional<Activity> label = std::nullopt);
    // Either place->transition or transition->place, resolved by ID.
    void add_arc(const std::string& source, const std::string& target);

    void set_initial_marking(Marking m);
    void set_final_marking(Marking m);

    const std::vector<PlaceId>& places() const { return places_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    // Arcs in insertion order, as (source ID, target ID).
    const std::vector<std::pair<std::string, std::string>>& arcs() const { return arcs_; }

    std::optional<std::size_t> place_index(const PlaceId& id) const;
    std::optional<std::size_t> transition_index(const TransitionId& id) const;

    const std::vector<std::size_t>& preset(std::size_t transition) const { return preset_[transition]; }
    const std::vector<std::size_t>& postset(std::size_t transition) const { return postset_[transition]; }

    const Marking& initial_marking() const { return initial_; }
    const Marking& final_marking() const { return final_; }

    // Throws invalid_marking_error if the marking mentions a place not in the net.
    void check_marking(const Marking& m) const;

  private:
    std::vector<PlaceId> places_;
    std::vector<Transition> transitions_;
    std::unordered_map<std::string, std::size_t> place_lookup_;
    std::unordered_map<std::string, std::size_t> transition_lookup_;
    std::vector<std::vector<std::size_t>> preset_;
    std::vector<std::vector<std::size_t>> postset_;
    std::vector<std::pair<std::string, std::string>> arcs_;
    Marking initial_;
    Marking final_;
};

std::set<TransitionId> enabled(const SystemNet& net, const Marking& m);

// Throws not_enabled_error when the transition is unknown or not enabled in m.
Marking fire(const SystemNet& net, const Marking& m, const TransitionId& t);

/*
 * Visible labels of all complete firing sequences (initial -> final marking),
 * with tau dropped and duplicates merged. Only for nets whose reachability
 * graph is finite and acyclic: a cycle raises unsupported_net_error, and more
 * than max_sequences results (at any intermediate marking) raises
 * explosion_error.
 */
std::set<ActivitySequence> visible_language(const SystemNet& net, std::size_t max_sequences);

// Sequence-shaped net p1 -t1-> p2 ... -tn-> p(n+1) replaying exactly `trace`.
SystemNet event_net(const ActivitySequence& trace);

// Component of a product transition; nullopt stands for the "no move" symbol.
struct ProductTransition {
    std::optional<std::size_t> first;
    std::optional<std::size_t> second;
};

struct ProductNet {
    SystemNet net;
    // origin[i] describes net.transitions()[i] in terms of the two operands.
    std::vector<ProductTransition> origin;
};

/*
 * Synchronous product. Places are tagged "1:" / "2:" to keep the operands'
 * ID spaces apart. Transitions come in three groups, in this order:
 * (t1,>>) for every t1, (>>,t2) for every t2, then (t1,t2) for every pair
 * sharing a visible label.
 */
ProductNet product(const SystemNet& first, const SystemNet& second);

// String used for the "no move" component in product transition IDs.
inline constexpr const char* kNoMove = ">>";

} // namespace uconf
