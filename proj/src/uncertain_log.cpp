#include "uconf/uncertain_log.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "uconf/errors.hpp"

namespace uconf {

WeaklyUncertainEvent WeaklyUncertainEvent::from_independent(EventId id, const std::map<CaseId, double>& cases,
                                                            const std::map<Activity, double>& activities,
                                                            const std::map<Timestamp, double>& timestamps,
                                                            double existence) {
    WeaklyUncertainEvent ev{std::move(id), {}, std::nullopt};
    for (const auto& [c, pc] : cases) {
        for (const auto& [a, pa] : activities) {
            for (const auto& [t, pt] : timestamps) {
                double m = pc * pa * pt * existence;
                if (m > 0.0) ev.mass[{c, a, t}] = m;
            }
        }
    }
    return ev;
}

void validate(const SimpleUncertainTrace& trace) {
    std::unordered_set<EventId> seen;
    for (const auto& e : trace.events) {
        if (!seen.insert(e.id).second) throw invalid_trace_error("duplicate event ID '" + e.id + "'");
        if (e.activities.empty()) throw invalid_trace_error("event '" + e.id + "' has no activity");
        if (e.t_min > e.t_max) throw invalid_trace_error("event '" + e.id + "' has t_min > t_max");
    }
}

std::vector<StronglyUncertainEvent> weak_to_strong(const std::vector<WeaklyUncertainEvent>& log) {
    std::vector<StronglyUncertainEvent> out;
    out.reserve(log.size());
    for (const auto& ev : log) {
        if (ev.mass.empty()) throw invalid_distribution_error("event '" + ev.id + "' has an empty mass function");
        StronglyUncertainEvent s;
        s.id = ev.id;
        double total = 0.0;
        for (const auto& [outcome, m] : ev.mass) {
            if (!(m > 0.0) || m > 1.0 + kMassTolerance)
                throw invalid_distribution_error("event '" + ev.id + "' has a mass value outside (0,1]");
            total += m;
            s.case_ids.insert(outcome.case_id);
            s.activities.insert(outcome.activity);
            s.timestamps.insert(outcome.timestamp);
        }
        if (total > 1.0 + kMassTolerance)
            throw invalid_distribution_error("event '" + ev.id + "' has total mass above 1");
        if (ev.continuous_time) {
            if (!ev.continuous_time->support)
                throw unsupported_distribution_error("event '" + ev.id +
                                                     "' has a continuous timestamp without finite support");
            s.timestamps = {ev.continuous_time->support->first, ev.continuous_time->support->second};
        }
        s.indeterminacy = std::abs(total - 1.0) <= kMassTolerance ? Indeterminacy::determinate
                                                                  : Indeterminacy::indeterminate;
        out.push_back(std::move(s));
    }
    return out;
}

SimpleUncertainLog simplify(const std::vector<StronglyUncertainEvent>& log,
                            const std::map<EventId, CaseId>& assignment) {
    std::map<CaseId, SimpleUncertainTrace> by_case;
    for (const auto& e : log) {
        auto it = assignment.find(e.id);
        if (it == assignment.end()) throw incomplete_assignment_error("no case assigned to event '" + e.id + "'");
        if (!e.case_ids.count(it->second))
            throw invalid_assignment_error("case '" + it->second + "' is not a possible case of event '" + e.id +
                                           "'");
        if (e.timestamps.empty() || e.activities.empty())
            throw invalid_trace_error("event '" + e.id + "' has an empty attribute set");
        auto& trace = by_case[it->second];
        trace.case_id = it->second;
        trace.events.push_back({e.id, e.activities, *e.timestamps.begin(), *e.timestamps.rbegin(), e.indeterminacy});
    }
    SimpleUncertainLog out;
    out.reserve(by_case.size());
    for (auto& [c, t] : by_case) out.push_back(std::move(t));
    return out;
}

namespace {

class realization_enumerator {
  public:
    realization_enumerator(const SimpleUncertainTrace& trace, std::size_t cap) : trace_(trace), cap_(cap) {
        const std::size_t n = trace.events.size();
        preds_.resize(n);
        succs_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            activities_.emplace_back(trace.events[i].activities.begin(), trace.events[i].activities.end());
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j && precedes(trace.events[j], trace.events[i])) {
                    preds_[i].push_back(j);
                    succs_[j].push_back(i);
                }
            }
        }
    }

    std::set<ActivitySequence> run() {
        const std::size_t n = trace_.events.size();
        std::vector<std::size_t> optional_events;
        for (std::size_t i = 0; i < n; ++i) {
            if (trace_.events[i].indeterminate()) optional_events.push_back(i);
        }
        if (optional_events.size() >= 63)
            throw explosion_error("too many indeterminate events to enumerate", 0);

        const std::uint64_t subsets = std::uint64_t{1} << optional_events.size();
        for (std::uint64_t mask = 0; mask < subsets; ++mask) {
            included_.assign(n, 1);
            for (std::size_t k = 0; k < optional_events.size(); ++k) {
                if (!(mask >> k & 1)) included_[optional_events[k]] = 0;
            }
            remaining_preds_.assign(n, 0);
            std::size_t count = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (!included_[i]) continue;
                ++count;
                for (std::size_t j : preds_[i]) remaining_preds_[i] += included_[j];
            }
            placed_.assign(n, 0);
            current_.clear();
            extend(count);
        }
        return std::move(result_);
    }

  private:
    void extend(std::size_t left) {
        if (left == 0) {
            result_.insert(current_);
            if (result_.size() > cap_)
                throw explosion_error("more than " + std::to_string(cap_) + " realizations", result_.size());
            return;
        }
        const std::size_t n = trace_.events.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (!included_[i] || placed_[i] || remaining_preds_[i] != 0) continue;
            placed_[i] = 1;
            for (std::size_t s : succs_[i]) --remaining_preds_[s];
            for (const auto& a : activities_[i]) {
                current_.push_back(a);
                extend(left - 1);
                current_.pop_back();
            }
            for (std::size_t s : succs_[i]) ++remaining_preds_[s];
            placed_[i] = 0;
        }
    }

    const SimpleUncertainTrace& trace_;
    std::size_t cap_;
    std::vector<std::vector<std::size_t>> preds_, succs_;
    std::vector<std::vector<Activity>> activities_;
    std::vector<char> included_, placed_;
    std::vector<std::size_t> remaining_preds_;
    ActivitySequence current_;
    std::set<ActivitySequence> result_;
};

bool compatible(const CertainEvent& c, const StronglyUncertainEvent& u) {
    return c.id == u.id && u.activities.count(c.activity) && u.case_ids.count(c.case_id) &&
           u.timestamps.count(c.timestamp);
}

// Kuhn's augmenting paths: can every vertex in `left` be matched to a distinct right vertex?
bool saturates(const std::vector<std::vector<std::size_t>>& adj, std::size_t right_size,
               const std::vector<std::size_t>& left) {
    std::vector<std::optional<std::size_t>> owner(right_size);
    std::vector<char> visited;
    std::function<bool(std::size_t)> augment = [&](std::size_t i) {
        for (std::size_t j : adj[i]) {
            if (visited[j]) continue;
            visited[j] = 1;
            if (!owner[j] || augment(*owner[j])) {
                owner[j] = i;
                return true;
            }
        }
        return false;
    };
    for (std::size_t i : left) {
        visited.assign(right_size, 0);
        if (!augment(i)) return false;
    }
    return true;
}

} // namespace

std::set<ActivitySequence> realizations(const SimpleUncertainTrace& trace, std::size_t cap) {
    validate(trace);
    return realization_enumerator(trace, cap).run();
}

bool is_log_realization(const std::vector<CertainEvent>& certain,
                        const std::vector<StronglyUncertainEvent>& uncertain) {
    const std::size_t nc = certain.size(), nu = uncertain.size();
    std::vector<std::vector<std::size_t>> certain_adj(nc), uncertain_adj(nu);
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t j = 0; j < nu; ++j) {
            if (compatible(certain[i], uncertain[j])) {
                certain_adj[i].push_back(j);
                uncertain_adj[j].push_back(i);
            }
        }
    }

    // A matching saturating every certain event and one saturating every
    // determinate uncertain event exist iff one matching does both
    // (Mendelsohn-Dulmage), so two one-sided checks suffice.
    std::vector<std::size_t> all_certain(nc);
    for (std::size_t i = 0; i < nc; ++i) all_certain[i] = i;
    std::vector<std::size_t> determinate;
    for (std::size_t j = 0; j < nu; ++j) {
        if (uncertain[j].indeterminacy == Indeterminacy::determinate) determinate.push_back(j);
    }
    return saturates(certain_adj, nu, all_certain) && saturates(uncertain_adj, nc, determinate);
}

} // namespace uconf
