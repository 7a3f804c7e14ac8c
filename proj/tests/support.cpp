#include "support.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "uconf/synth.hpp"
#include "uconf/timestamp.hpp"

namespace uconf::test {

Timestamp day(int d) { return parse_iso8601("2011-12-01") + (d - 1) * kMillisPerDay; }

SimpleUncertainEvent event(const std::string& id, std::set<Activity> acts, Timestamp lo, Timestamp hi,
                           bool indeterminate) {
    return {id, std::move(acts), lo, hi, indeterminate ? Indeterminacy::indeterminate : Indeterminacy::determinate};
}

SimpleUncertainTrace running_example() {
    return {"0",
            {event("e1", {"A"}, day(5), day(5)), event("e2", {"B", "C"}, day(7), day(7)),
             event("e3", {"D"}, day(6), day(10)), event("e4", {"A", "C"}, day(9), day(9)),
             event("e5", {"E"}, day(11), day(11), true)}};
}

SystemNet sequence_model(const ActivitySequence& labels) {
    SystemNet net;
    net.add_place("i");
    std::string prev = "i";
    for (std::size_t k = 0; k < labels.size(); ++k) {
        const std::string next = k + 1 == labels.size() ? "o" : "p" + std::to_string(k + 1);
        net.add_place(next);
        const std::string t = "t" + std::to_string(k + 1);
        net.add_transition(t, labels[k]);
        net.add_arc(prev, t);
        net.add_arc(t, next);
        prev = next;
    }
    if (labels.empty()) {
        net.set_initial_marking({"i"});
        net.set_final_marking({"i"});
        return net;
    }
    net.set_initial_marking({"i"});
    net.set_final_marking({"o"});
    return net;
}

SystemNet running_example_model() {
    SystemNet net;
    for (const char* p : {"i", "p1", "p2", "p3", "p4", "p5", "p6", "o"}) net.add_place(p);
    net.add_transition("a1", "A");
    net.add_transition("split");
    net.add_transition("b", "B");
    net.add_transition("c", "C");
    net.add_transition("d", "D");
    net.add_transition("join");
    net.add_transition("a2", "A");
    net.add_transition("e", "E");
    for (auto [s, t] : std::vector<std::pair<const char*, const char*>>{
             {"i", "a1"}, {"a1", "p1"}, {"p1", "split"}, {"split", "p2"}, {"split", "p3"}, {"p2", "b"},
             {"p2", "c"}, {"b", "p4"}, {"c", "p4"}, {"p3", "d"}, {"d", "p5"}, {"p4", "join"}, {"p5", "join"},
             {"join", "p6"}, {"p6", "a2"}, {"a2", "p1"}, {"p6", "e"}, {"e", "o"}}) {
        net.add_arc(s, t);
    }
    net.set_initial_marking({"i"});
    net.set_final_marking({"o"});
    return net;
}

SimpleUncertainTrace random_trace(Rng& rng, std::size_t max_events, double p) {
    SimpleUncertainTrace t;
    t.case_id = "r" + std::to_string(rng.below(1'000'000));
    const std::size_t len = rng.below(max_events + 1);
    int d = 1;
    for (std::size_t k = 0; k < len; ++k) {
        d += static_cast<int>(rng.below(3)); // ties possible
        std::set<Activity> acts{activity_name(rng.below(4))};
        if (rng.bernoulli(p)) acts.insert(activity_name(rng.below(4)));
        Timestamp lo = day(d), hi = day(d);
        if (rng.bernoulli(p)) {
            lo -= static_cast<Timestamp>(rng.below(3)) * kMillisPerDay / 2;
            hi += static_cast<Timestamp>(1 + rng.below(3)) * kMillisPerDay / 2;
        }
        t.events.push_back(event("e" + std::to_string(k + 1), acts, lo, hi, rng.bernoulli(p)));
    }
    return t;
}

std::set<ActivitySequence> realizations_oracle(const SimpleUncertainTrace& trace) {
    const auto& ev = trace.events;
    std::set<Timestamp> anchors;
    for (const auto& e : ev) anchors.insert(e.t_min);

    std::set<ActivitySequence> out;
    const std::size_t n = ev.size();
    std::vector<std::size_t> optional;
    for (std::size_t i = 0; i < n; ++i) {
        if (ev[i].indeterminate()) optional.push_back(i);
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << optional.size()); ++mask) {
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < n; ++i) {
            auto pos = std::find(optional.begin(), optional.end(), i);
            if (pos == optional.end() || (mask >> (pos - optional.begin())) & 1) kept.push_back(i);
        }
        // every timestamp choice
        std::vector<std::pair<Timestamp, std::size_t>> timed(kept.size());
        std::function<void(std::size_t)> choose_time = [&](std::size_t k) {
            if (k == kept.size()) {
                auto sorted = timed;
                std::sort(sorted.begin(), sorted.end());
                // permute within equal timestamps
                std::vector<std::size_t> order;
                for (const auto& [t, i] : sorted) order.push_back(i);
                std::vector<std::pair<std::size_t, std::size_t>> groups;
                for (std::size_t a = 0; a < sorted.size();) {
                    std::size_t b = a;
                    while (b < sorted.size() && sorted[b].first == sorted[a].first) ++b;
                    groups.emplace_back(a, b);
                    a = b;
                }
                std::function<void(std::size_t)> permute = [&](std::size_t g) {
                    if (g == groups.size()) {
                        // every activity choice
                        ActivitySequence seq(order.size());
                        std::function<void(std::size_t)> pick = [&](std::size_t k2) {
                            if (k2 == order.size()) {
                                out.insert(seq);
                                return;
                            }
                            for (const auto& a : ev[order[k2]].activities) {
                                seq[k2] = a;
                                pick(k2 + 1);
                            }
                        };
                        pick(0);
                        return;
                    }
                    auto [a, b] = groups[g];
                    std::sort(order.begin() + a, order.begin() + b);
                    do {
                        permute(g + 1);
                    } while (std::next_permutation(order.begin() + a, order.begin() + b));
                };
                permute(0);
                return;
            }
            const auto& e = ev[kept[k]];
            for (Timestamp t : anchors) {
                if (t < e.t_min || t > e.t_max) continue;
                timed[k] = {t, kept[k]};
                choose_time(k + 1);
            }
        };
        choose_time(0);
    }
    return out;
}

std::set<std::pair<std::size_t, std::size_t>> reduction_oracle(std::size_t n,
                                                               const std::set<std::pair<std::size_t, std::size_t>>& edges) {
    // long[u][w]: a path of length >= 2 exists
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false)), longer(n, std::vector<bool>(n, false));
    for (auto [u, w] : edges) reach[u][w] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) longer[i][j] = true;
    std::set<std::pair<std::size_t, std::size_t>> out;
    for (auto [u, w] : edges) {
        if (!longer[u][w]) out.emplace(u, w);
    }
    return out;
}

std::vector<std::pair<ActivitySequence, std::size_t>> complete_runs(const SystemNet& net, std::size_t depth_cap) {
    std::vector<std::pair<ActivitySequence, std::size_t>> out;
    ActivitySequence labels;
    std::size_t taus = 0;
    std::function<void(const Marking&, std::size_t)> walk = [&](const Marking& m, std::size_t depth) {
        if (m == net.final_marking()) out.emplace_back(labels, taus);
        if (depth == depth_cap) return;
        for (const auto& t : enabled(net, m)) {
            const auto& tr = net.transitions()[*net.transition_index(t)];
            if (tr.label) labels.push_back(*tr.label);
            else ++taus;
            walk(fire(net, m, t), depth + 1);
            if (tr.label) labels.pop_back();
            else --taus;
        }
    };
    walk(net.initial_marking(), 0);
    return out;
}

std::uint64_t alignment_oracle(const ActivitySequence& trace, const SystemNet& model, const CostFunction& c) {
    std::uint64_t best = UINT64_MAX;
    for (const auto& [run, taus] : complete_runs(model)) {
        const std::size_t n = trace.size(), m = run.size();
        std::vector<std::vector<std::uint64_t>> d(n + 1, std::vector<std::uint64_t>(m + 1, 0));
        for (std::size_t i = 1; i <= n; ++i) d[i][0] = d[i - 1][0] + c.log_move;
        for (std::size_t j = 1; j <= m; ++j) d[0][j] = d[0][j - 1] + c.model_visible;
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 1; j <= m; ++j) {
                d[i][j] = std::min(d[i - 1][j] + c.log_move, d[i][j - 1] + c.model_visible);
                if (trace[i - 1] == run[j - 1]) d[i][j] = std::min(d[i][j], d[i - 1][j - 1] + c.synchronous);
            }
        }
        best = std::min(best, d[n][m] + taus * c.model_invisible);
    }
    return best;
}

std::string check_alignment(const Alignment& a, const SystemNet& log_net, const SystemNet& model) {
    Marking lm = log_net.initial_marking(), mm = model.initial_marking();
    ActivitySequence fired;
    try {
        for (const auto& mv : a.moves) {
            if (!mv.log && !mv.model) return "empty move";
            if (mv.log && mv.model && mv.log->label != mv.model->label) return "synchronous move with different labels";
            if (mv.log) {
                const auto idx = log_net.transition_index(mv.log->transition);
                if (!idx) return "unknown log transition " + mv.log->transition;
                if (log_net.transitions()[*idx].label != mv.log->label) return "log label mismatch";
                lm = fire(log_net, lm, mv.log->transition);
                if (mv.log->label) fired.push_back(*mv.log->label);
            }
            if (mv.model) {
                const auto idx = model.transition_index(mv.model->transition);
                if (!idx) return "unknown model transition " + mv.model->transition;
                if (model.transitions()[*idx].label != mv.model->label) return "model label mismatch";
                mm = fire(model, mm, mv.model->transition);
            }
        }
    } catch (const std::exception& e) {
        return e.what();
    }
    if (!(lm == log_net.final_marking())) return "log side does not reach its final marking";
    if (!(mm == model.final_marking())) return "model side does not reach its final marking";
    if (fired != a.log_projection()) return "log projection differs from fired log labels";
    return "";
}

} // namespace uconf::test
