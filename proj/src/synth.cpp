#include "uconf/synth.hpp"

#include <algorithm>
#include <set>

#include "uconf/errors.hpp"
#include "uconf/rng.hpp"

namespace uconf {

std::string activity_name(std::size_t index) {
    std::string s;
    ++index;
    while (index > 0) {
        --index;
        s.insert(s.begin(), static_cast<char>('A' + index % 26));
        index /= 26;
    }
    return s;
}

namespace {

class model_builder {
  public:
    explicit model_builder(Rng rng) : rng_(rng) {}

    SystemNet build(std::size_t n) {
        net_.add_place("source");
        net_.add_place("sink");
        block(n, "source", "sink");
        net_.set_initial_marking({"source"});
        net_.set_final_marking({"sink"});
        return std::move(net_);
    }

  private:
    std::string fresh_place() {
        std::string id = "p" + std::to_string(++places_);
        net_.add_place(id);
        return id;
    }

    void block(std::size_t n, const std::string& in, const std::string& out) {
        if (n == 1) {
            std::string label = activity_name(labels_++);
            std::string id = "t" + label;
            net_.add_transition(id, label);
            net_.add_arc(in, id);
            net_.add_arc(id, out);
            return;
        }
        const std::size_t left = 1 + rng_.below(n - 1);
        const std::size_t right = n - left;
        switch (rng_.below(3)) {
        case 0: { // sequence
            std::string mid = fresh_place();
            block(left, in, mid);
            block(right, mid, out);
            break;
        }
        case 1: // exclusive choice
            block(left, in, out);
            block(right, in, out);
            break;
        default: { // parallel
            std::string split = "tau" + std::to_string(++taus_);
            std::string join = "tau" + std::to_string(++taus_);
            net_.add_transition(split);
            net_.add_transition(join);
            std::string a_in = fresh_place(), a_out = fresh_place();
            std::string b_in = fresh_place(), b_out = fresh_place();
            net_.add_arc(in, split);
            net_.add_arc(split, a_in);
            net_.add_arc(split, b_in);
            net_.add_arc(a_out, join);
            net_.add_arc(b_out, join);
            net_.add_arc(join, out);
            block(left, a_in, a_out);
            block(right, b_in, b_out);
            break;
        }
        }
    }

    Rng rng_;
    SystemNet net_;
    std::size_t places_ = 0, labels_ = 0, taus_ = 0;
};

void respace(TimedTrace& t, Timestamp origin) {
    for (std::size_t i = 0; i < t.events.size(); ++i)
        t.events[i].time = origin + static_cast<Timestamp>(i) * kMillisPerDay;
}

} // namespace

SystemNet generate_model(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw invalid_net_error("generate_model needs at least one transition");
    return model_builder(Rng::stream(seed, {static_cast<std::uint64_t>(StreamTag::model)})).build(n);
}

std::vector<Activity> alphabet(const SystemNet& net) {
    std::vector<Activity> out;
    std::set<Activity> seen;
    for (const auto& t : net.transitions()) {
        if (t.label && seen.insert(*t.label).second) out.push_back(*t.label);
    }
    return out;
}

TimedLog playout(const SystemNet& model, std::size_t num_traces, std::uint64_t seed, const PlayoutOptions& options) {
    TimedLog log;
    log.reserve(num_traces);
    for (std::size_t i = 0; i < num_traces; ++i) {
        Rng rng = Rng::stream(seed, {static_cast<std::uint64_t>(StreamTag::playout), i});
        TimedTrace trace{"case" + std::to_string(i + 1), {}};
        Marking m = model.initial_marking();
        std::size_t steps = 0;
        while (m != model.final_marking()) {
            auto en = enabled(model, m);
            if (en.empty()) throw playout_error("playout reached a dead marking that is not final");
            if (++steps > options.step_cap)
                throw playout_error("playout exceeded " + std::to_string(options.step_cap) + " steps");
            auto it = en.begin();
            std::advance(it, static_cast<long>(rng.below(en.size())));
            const auto& t = model.transitions()[*model.transition_index(*it)];
            m = fire(model, m, t.id);
            if (t.label) {
                Timestamp at = options.origin + static_cast<Timestamp>(trace.events.size()) * options.spacing;
                trace.events.push_back({*t.label, at});
            }
        }
        log.push_back(std::move(trace));
    }
    return log;
}

TimedLog inject_deviations(const TimedLog& log, const DeviationParams& params, const std::vector<Activity>& alphabet,
                           std::uint64_t seed, DeviationStats* stats) {
    DeviationStats local;
    TimedLog out = log;
    for (std::size_t i = 0; i < out.size(); ++i) {
        TimedTrace& trace = out[i];
        Rng rng = Rng::stream(seed, {static_cast<std::uint64_t>(StreamTag::deviation), i});
        bool touched = false;
        const Timestamp origin = trace.events.empty() ? kPlayoutOrigin : trace.events.front().time;

        for (auto& e : trace.events) {
            if (!rng.bernoulli(params.wrong_activity_prob)) continue;
            std::vector<Activity> others;
            for (const auto& a : alphabet) {
                if (a != e.activity) others.push_back(a);
            }
            if (others.empty()) continue;
            e.activity = others[rng.below(others.size())];
            ++local.wrong_activities;
            touched = true;
        }

        for (std::size_t k = 0; k + 1 < trace.events.size(); ++k) {
            if (!rng.bernoulli(params.swap_prob)) continue;
            std::swap(trace.events[k].time, trace.events[k + 1].time);
            ++local.swaps;
            touched = true;
        }
        std::stable_sort(trace.events.begin(), trace.events.end(),
                         [](const TimedEvent& a, const TimedEvent& b) { return a.time < b.time; });

        if (rng.bernoulli(params.extra_event_prob) && !alphabet.empty()) {
            const Activity& label = alphabet[rng.below(alphabet.size())];
            const std::size_t pos = rng.below(trace.events.size() + 1);
            trace.events.insert(trace.events.begin() + static_cast<long>(pos), TimedEvent{label, 0});
            ++local.extra_events;
            touched = true;
        }
        if (touched) respace(trace, origin);
    }
    if (stats) *stats = local;
    return out;
}

SimpleUncertainLog inject_uncertainty(const TimedLog& log, const UncertaintyParams& params, std::uint64_t seed) {
    if (params.p < 0.0 || params.p > 1.0) throw error("uncertainty probability must lie in [0,1]");
    if (params.p > 0.0 && params.activity_pool.empty()) throw error("activity pool is empty");
    SimpleUncertainLog out;
    out.reserve(log.size());
    for (std::size_t i = 0; i < log.size(); ++i) {
        const TimedTrace& src = log[i];
        SimpleUncertainTrace trace{src.case_id, {}};
        for (std::size_t k = 0; k < src.events.size(); ++k) {
            const TimedEvent& e = src.events[k];
            Rng rng = Rng::stream(seed, {static_cast<std::uint64_t>(StreamTag::uncertainty), i, k});
            const double activity_draw = rng.uniform();
            const double time_draw = rng.uniform();
            const double indeterminacy_draw = rng.uniform();
            const std::uint64_t alternative_draw = rng.next();

            SimpleUncertainEvent u{src.case_id + "." + std::to_string(k + 1), {e.activity}, e.time, e.time,
                                   Indeterminacy::determinate};
            if (activity_draw < params.p) {
                std::vector<Activity> others;
                for (const auto& a : params.activity_pool) {
                    if (a != e.activity) others.push_back(a);
                }
                if (!others.empty()) u.activities.insert(others[alternative_draw % others.size()]);
            }
            if (time_draw < params.p) {
                u.t_min = e.time - params.interval_radius;
                u.t_max = e.time + params.interval_radius;
            }
            if (indeterminacy_draw < params.p) u.indeterminacy = Indeterminacy::indeterminate;
            trace.events.push_back(std::move(u));
        }
        out.push_back(std::move(trace));
    }
    return out;
}

} // namespace uconf
