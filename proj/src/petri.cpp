#include "uconf/petri.hpp"

#include <algorithm>

#include "uconf/errors.hpp"

namespace uconf {

Marking::Marking(std::initializer_list<PlaceId> places) {
    for (const auto& p : places) add(p);
}

void Marking::add(const PlaceId& place, unsigned count) {
    if (count == 0) return;
    tokens_[place] += count;
}

bool Marking::remove_one(const PlaceId& place) {
    auto it = tokens_.find(place);
    if (it == tokens_.end()) return false;
    if (--it->second == 0) tokens_.erase(it);
    return true;
}

unsigned Marking::count(const PlaceId& place) const {
    auto it = tokens_.find(place);
    return it == tokens_.end() ? 0 : it->second;
}

std::size_t Marking::size() const {
    std::size_t n = 0;
    for (const auto& [p, c] : tokens_) n += c;
    return n;
}

Marking operator+(const Marking& a, const Marking& b) {
    Marking r = a;
    for (const auto& [p, c] : b.tokens_) r.add(p, c);
    return r;
}

std::size_t SystemNet::add_place(PlaceId id) {
    if (id.empty()) throw invalid_net_error("empty place ID");
    if (place_lookup_.count(id) || transition_lookup_.count(id))
        throw invalid_net_error("duplicate node ID '" + id + "'");
    place_lookup_.emplace(id, places_.size());
    places_.push_back(std::move(id));
    return places_.size() - 1;
}

std::size_t SystemNet::add_transition(TransitionId id, std::optional<Activity> label) {
    if (id.empty()) throw invalid_net_error("empty transition ID");
    if (place_lookup_.count(id) || transition_lookup_.count(id))
        throw invalid_net_error("duplicate node ID '" + id + "'");
    if (label && (label->empty() || *label == "τ"))
        throw invalid_net_error("transition '" + id + "' carries an explicit tau/empty label");
    transition_lookup_.emplace(id, transitions_.size());
    transitions_.push_back({std::move(id), std::move(label)});
    preset_.emplace_back();
    postset_.emplace_back();
    return transitions_.size() - 1;
}

void SystemNet::add_arc(const std::string& source, const std::string& target) {
    auto insert_sorted = [](std::vector<std::size_t>& v, std::size_t x) {
        auto it = std::lower_bound(v.begin(), v.end(), x);
        if (it != v.end() && *it == x) return false;
        v.insert(it, x);
        return true;
    };
    auto sp = place_lookup_.find(source);
    auto st = transition_lookup_.find(source);
    auto tp = place_lookup_.find(target);
    auto tt = transition_lookup_.find(target);
    bool inserted;
    if (sp != place_lookup_.end() && tt != transition_lookup_.end()) {
        inserted = insert_sorted(preset_[tt->second], sp->second);
    } else if (st != transition_lookup_.end() && tp != place_lookup_.end()) {
        inserted = insert_sorted(postset_[st->second], tp->second);
    } else {
        throw invalid_net_error("arc " + source + " -> " + target +
                                " must connect an existing place and transition");
    }
    if (inserted) arcs_.emplace_back(source, target);
}

void SystemNet::check_marking(const Marking& m) const {
    for (const auto& [p, c] : m.tokens()) {
        if (!place_lookup_.count(p)) throw invalid_marking_error("marking refers to unknown place '" + p + "'");
    }
}

void SystemNet::set_initial_marking(Marking m) {
    check_marking(m);
    initial_ = std::move(m);
}

void SystemNet::set_final_marking(Marking m) {
    check_marking(m);
    final_ = std::move(m);
}

std::optional<std::size_t> SystemNet::place_index(const PlaceId& id) const {
    auto it = place_lookup_.find(id);
    if (it == place_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> SystemNet::transition_index(const TransitionId& id) const {
    auto it = transition_lookup_.find(id);
    if (it == transition_lookup_.end()) return std::nullopt;
    return it->second;
}

namespace {

bool is_enabled(const SystemNet& net, const Marking& m, std::size_t t) {
    for (std::size_t p : net.preset(t)) {
        if (m.count(net.places()[p]) == 0) return false;
    }
    return true;
}

Marking fire_unchecked(const SystemNet& net, const Marking& m, std::size_t t) {
    Marking r = m;
    for (std::size_t p : net.preset(t)) r.remove_one(net.places()[p]);
    for (std::size_t p : net.postset(t)) r.add(net.places()[p]);
    return r;
}

struct language_builder {
    const SystemNet& net;
    std::size_t bound;
    std::map<Marking, std::set<ActivitySequence>> memo;
    std::set<Marking> on_stack;

    const std::set<ActivitySequence>& suffixes(const Marking& m) {
        if (auto it = memo.find(m); it != memo.end()) return it->second;
        if (!on_stack.insert(m).second) throw unsupported_net_error("reachability graph contains a cycle");

        std::set<ActivitySequence> result;
        if (m == net.final_marking()) result.insert(ActivitySequence{});
        for (std::size_t t = 0; t < net.transitions().size(); ++t) {
            if (!is_enabled(net, m, t)) continue;
            const auto& label = net.transitions()[t].label;
            const auto& tail = suffixes(fire_unchecked(net, m, t));
            for (const auto& seq : tail) {
                if (label) {
                    ActivitySequence s;
                    s.reserve(seq.size() + 1);
                    s.push_back(*label);
                    s.insert(s.end(), seq.begin(), seq.end());
                    result.insert(std::move(s));
                } else {
                    result.insert(seq);
                }
                if (result.size() > bound)
                    throw explosion_error("visible language exceeds " + std::to_string(bound) + " sequences",
                                          result.size());
            }
        }
        on_stack.erase(m);
        return memo.emplace(m, std::move(result)).first->second;
    }
};

} // namespace

std::set<TransitionId> enabled(const SystemNet& net, const Marking& m) {
    net.check_marking(m);
    std::set<TransitionId> out;
    for (std::size_t t = 0; t < net.transitions().size(); ++t) {
        if (is_enabled(net, m, t)) out.insert(net.transitions()[t].id);
    }
    return out;
}

Marking fire(const SystemNet& net, const Marking& m, const TransitionId& t) {
    net.check_marking(m);
    auto idx = net.transition_index(t);
    if (!idx) throw not_enabled_error("unknown transition '" + t + "'");
    if (!is_enabled(net, m, *idx)) throw not_enabled_error("transition '" + t + "' is not enabled");
    return fire_unchecked(net, m, *idx);
}

std::set<ActivitySequence> visible_language(const SystemNet& net, std::size_t max_sequences) {
    language_builder b{net, max_sequences, {}, {}};
    return b.suffixes(net.initial_marking());
}

SystemNet event_net(const ActivitySequence& trace) {
    SystemNet net;
    for (std::size_t i = 1; i <= trace.size() + 1; ++i) net.add_place("p" + std::to_string(i));
    for (std::size_t i = 1; i <= trace.size(); ++i) {
        std::string t = "t" + std::to_string(i);
        net.add_transition(t, trace[i - 1]);
        net.add_arc("p" + std::to_string(i), t);
        net.add_arc(t, "p" + std::to_string(i + 1));
    }
    net.set_initial_marking({"p1"});
    net.set_final_marking({"p" + std::to_string(trace.size() + 1)});
    return net;
}

ProductNet product(const SystemNet& first, const SystemNet& second) {
    ProductNet out;
    SystemNet& net = out.net;
    auto tag1 = [](const std::string& p) { return "1:" + p; };
    auto tag2 = [](const std::string& p) { return "2:" + p; };
    for (const auto& p : first.places()) net.add_place(tag1(p));
    for (const auto& p : second.places()) net.add_place(tag2(p));

    auto wire = [&](const std::string& id, const SystemNet& src, std::size_t t, auto tag) {
        for (std::size_t p : src.preset(t)) net.add_arc(tag(src.places()[p]), id);
        for (std::size_t p : src.postset(t)) net.add_arc(id, tag(src.places()[p]));
    };

    for (std::size_t t = 0; t < first.transitions().size(); ++t) {
        const auto& tr = first.transitions()[t];
        std::string id = "(" + tr.id + "," + kNoMove + ")";
        net.add_transition(id, tr.label);
        wire(id, first, t, tag1);
        out.origin.push_back({t, std::nullopt});
    }
    for (std::size_t t = 0; t < second.transitions().size(); ++t) {
        const auto& tr = second.transitions()[t];
        std::string id = std::string("(") + kNoMove + "," + tr.id + ")";
        net.add_transition(id, tr.label);
        wire(id, second, t, tag2);
        out.origin.push_back({std::nullopt, t});
    }
    for (std::size_t t1 = 0; t1 < first.transitions().size(); ++t1) {
        const auto& a = first.transitions()[t1];
        if (!a.label) continue;
        for (std::size_t t2 = 0; t2 < second.transitions().size(); ++t2) {
            const auto& b = second.transitions()[t2];
            if (!b.label || *a.label != *b.label) continue;
            std::string id = "(" + a.id + "," + b.id + ")";
            net.add_transition(id, a.label);
            wire(id, first, t1, tag1);
            wire(id, second, t2, tag2);
            out.origin.push_back({t1, t2});
        }
    }

    Marking init, fin;
    for (const auto& [p, c] : first.initial_marking().tokens()) init.add(tag1(p), c);
    for (const auto& [p, c] : second.initial_marking().tokens()) init.add(tag2(p), c);
    for (const auto& [p, c] : first.final_marking().tokens()) fin.add(tag1(p), c);
    for (const auto& [p, c] : second.final_marking().tokens()) fin.add(tag2(p), c);
    net.set_initial_marking(std::move(init));
    net.set_final_marking(std::move(fin));
    return out;
}

} // namespace uconf
