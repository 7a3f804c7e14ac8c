#include "uconf/behavior.hpp"

#include <sstream>

#include "uconf/errors.hpp"

namespace uconf {

namespace {

std::vector<std::vector<std::size_t>> adjacency(const Digraph& g) {
    std::vector<std::vector<std::size_t>> adj(g.size);
    for (const auto& [u, w] : g.edges) {
        if (u >= g.size || w >= g.size) throw not_a_dag_error("edge endpoint out of range");
        adj[u].push_back(w);
    }
    return adj;
}

// Vertices reachable from `from` (excluding `from` unless on a cycle).
std::vector<char> reachable_from(const std::vector<std::vector<std::size_t>>& adj, std::size_t from) {
    std::vector<char> seen(adj.size(), 0);
    std::vector<std::size_t> stack(adj[from].begin(), adj[from].end());
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        if (seen[v]) continue;
        seen[v] = 1;
        for (std::size_t w : adj[v]) stack.push_back(w);
    }
    return seen;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

} // namespace

std::vector<std::size_t> topological_order(const Digraph& g) {
    auto adj = adjacency(g);
    std::vector<std::size_t> indeg(g.size, 0);
    for (const auto& [u, w] : g.edges) ++indeg[w];
    std::vector<std::size_t> ready, order;
    for (std::size_t v = g.size; v-- > 0;) {
        if (indeg[v] == 0) ready.push_back(v);
    }
    while (!ready.empty()) {
        std::size_t v = ready.back();
        ready.pop_back();
        order.push_back(v);
        for (std::size_t w : adj[v]) {
            if (--indeg[w] == 0) ready.push_back(w);
        }
    }
    if (order.size() != g.size) throw not_a_dag_error("graph contains a cycle");
    return order;
}

std::set<std::pair<std::size_t, std::size_t>> transitive_closure(const Digraph& g) {
    auto adj = adjacency(g);
    std::set<std::pair<std::size_t, std::size_t>> closure;
    for (std::size_t u = 0; u < g.size; ++u) {
        auto seen = reachable_from(adj, u);
        for (std::size_t w = 0; w < g.size; ++w) {
            if (seen[w]) closure.emplace(u, w);
        }
    }
    return closure;
}

Digraph transitive_reduction(const Digraph& dag) {
    topological_order(dag); // cycle check
    auto adj = adjacency(dag);
    Digraph out{dag.size, {}};
    for (std::size_t u = 0; u < dag.size; ++u) {
        // w is redundant iff reachable from another out-neighbour of u.
        std::vector<char> via_other(dag.size, 0);
        for (std::size_t x : adj[u]) {
            auto seen = reachable_from(adj, x);
            for (std::size_t w = 0; w < dag.size; ++w) via_other[w] |= seen[w];
        }
        for (std::size_t w : adj[u]) {
            if (!via_other[w]) out.edges.emplace(u, w);
        }
    }
    return out;
}

std::vector<std::size_t> BehaviorGraph::sources() const {
    std::vector<char> has_in(vertices.size(), 0);
    for (const auto& [u, w] : graph.edges) has_in[w] = 1;
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        if (!has_in[v]) out.push_back(v);
    }
    return out;
}

std::vector<std::size_t> BehaviorGraph::sinks() const {
    std::vector<char> has_out(vertices.size(), 0);
    for (const auto& [u, w] : graph.edges) has_out[u] = 1;
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        if (!has_out[v]) out.push_back(v);
    }
    return out;
}

BehaviorGraph behavior_graph(const SimpleUncertainTrace& trace) {
    validate(trace);
    Digraph full{trace.events.size(), {}};
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
        for (std::size_t j = 0; j < trace.events.size(); ++j) {
            if (precedes(trace.events[i], trace.events[j])) full.edges.emplace(i, j);
        }
    }
    return {trace.events, transitive_reduction(full)};
}

SystemNet behavior_net(const SimpleUncertainTrace& trace) { return behavior_net(behavior_graph(trace)); }

SystemNet behavior_net(const BehaviorGraph& bg) {
    SystemNet net;
    const auto& vs = bg.vertices;
    if (vs.empty()) {
        net.add_place("start");
        net.set_initial_marking({"start"});
        net.set_final_marking({"start"});
        return net;
    }

    std::vector<std::vector<std::string>> transitions_of(vs.size());
    for (std::size_t v = 0; v < vs.size(); ++v) {
        for (const auto& a : vs[v].activities) {
            std::string id = "(" + vs[v].id + "," + a + ")";
            net.add_transition(id, a);
            transitions_of[v].push_back(id);
        }
        if (vs[v].indeterminate()) {
            std::string id = "(" + vs[v].id + ")";
            net.add_transition(id, std::nullopt);
            transitions_of[v].push_back(id);
        }
    }

    for (const auto& [u, w] : bg.graph.edges) {
        std::string place = "(" + vs[u].id + "," + vs[w].id + ")";
        net.add_place(place);
        for (const auto& t : transitions_of[u]) net.add_arc(t, place);
        for (const auto& t : transitions_of[w]) net.add_arc(place, t);
    }

    auto sources = bg.sources();
    auto sinks = bg.sinks();
    Marking init, fin;
    for (std::size_t v : sources) {
        std::string place = sources.size() == 1 ? "start" : "start:" + vs[v].id;
        net.add_place(place);
        for (const auto& t : transitions_of[v]) net.add_arc(place, t);
        init.add(place);
    }
    for (std::size_t v : sinks) {
        std::string place = sinks.size() == 1 ? "end" : "end:" + vs[v].id;
        net.add_place(place);
        for (const auto& t : transitions_of[v]) net.add_arc(t, place);
        fin.add(place);
    }
    net.set_initial_marking(std::move(init));
    net.set_final_marking(std::move(fin));
    return net;
}

std::string to_dot(const BehaviorGraph& bg) {
    std::ostringstream o;
    o << "digraph behavior_graph {\n";
    o << "  rankdir=LR;\n";
    for (std::size_t v = 0; v < bg.vertices.size(); ++v) {
        const auto& e = bg.vertices[v];
        std::string acts;
        for (const auto& a : e.activities) acts += (acts.empty() ? "" : ", ") + a;
        o << "  v" << v << " [label=\"" << dot_escape(e.id) << "\\n{" << dot_escape(acts) << "}"
          << (e.indeterminate() ? " ?" : "") << "\"];\n";
    }
    for (const auto& [u, w] : bg.graph.edges) o << "  v" << u << " -> v" << w << ";\n";
    o << "}\n";
    return o.str();
}

} // namespace uconf
