#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "uconf/petri.hpp"
#include "uconf/uncertain_log.hpp"

namespace uconf {

// Directed graph over vertices 0..size-1.
struct Digraph {
    std::size_t size = 0;
    std::set<std::pair<std::size_t, std::size_t>> edges;

    friend bool operator==(const Digraph&, const Digraph&) = default;
};

// Throws not_a_dag_error if the graph has a cycle.
std::vector<std::size_t> topological_order(const Digraph& g);

// Reachability relation as (u, w) pairs with a path of length >= 1.
std::set<std::pair<std::size_t, std::size_t>> transitive_closure(const Digraph& g);

/*
 * Minimal subgraph with the same reachability. An edge (u,w) is dropped iff w
 * is reachable from u through some other out-neighbour of u. Unique for DAGs;
 * cycles raise not_a_dag_error.
 */
Digraph transitive_reduction(const Digraph& dag);

/*
 * Precedence DAG of an uncertain trace. Vertex i is trace.events[i]; the
 * edges are the transitive reduction of { (i,j) | t_max(i) < t_min(j) }.
 */
struct BehaviorGraph {
    std::vector<SimpleUncertainEvent> vertices;
    Digraph graph;

    std::vector<std::size_t> sources() const;
    std::vector<std::size_t> sinks() const;
};

BehaviorGraph behavior_graph(const SimpleUncertainTrace& trace);

/*
 * Net whose visible language is exactly realizations(trace).
 *
 * Per event v: a transition "(v,a)" labeled a for each candidate activity and,
 * for ?-events, one invisible "(v)". They share v's input and output places.
 * Each behavior-graph edge (v,w) becomes place "(v,w)". Every source vertex
 * gets its own start place and every sink vertex its own end place; these
 * are called "start"/"end" when unique and "start:v"/"end:v" otherwise.
 * The empty trace yields a single place "start" that is both initial and final.
 */
SystemNet behavior_net(const SimpleUncertainTrace& trace);
SystemNet behavior_net(const BehaviorGraph& graph);

// Graphviz rendering; vertex label is the event ID and its activity set.
std::string to_dot(const BehaviorGraph& graph);

} // namespace uconf
