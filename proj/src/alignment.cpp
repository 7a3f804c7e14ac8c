#include "uconf/alignment.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <queue>
#include <sstream>
#include <tuple>

#include "json.hpp"

#include "uconf/behavior.hpp"
#include "uconf/errors.hpp"

namespace uconf {

MoveClass classify(const Move& m) {
    if (m.log && m.model) return MoveClass::synchronous;
    if (m.model) return m.model->label ? MoveClass::model_visible : MoveClass::model_invisible;
    if (m.log) return m.log->label ? MoveClass::log_visible : MoveClass::log_invisible;
    throw error("move with no step on either side");
}

std::string to_string(MoveClass c) {
    switch (c) {
    case MoveClass::synchronous: return "sync";
    case MoveClass::model_invisible: return "model_tau";
    case MoveClass::model_visible: return "model";
    case MoveClass::log_invisible: return "log_tau";
    case MoveClass::log_visible: return "log";
    }
    return "?";
}

ActivitySequence Alignment::log_projection() const {
    ActivitySequence out;
    for (const auto& m : moves) {
        if (m.log && m.log->label) out.push_back(*m.log->label);
    }
    return out;
}

std::vector<TransitionId> Alignment::model_firing_sequence() const {
    std::vector<TransitionId> out;
    for (const auto& m : moves) {
        if (m.model) out.push_back(m.model->transition);
    }
    return out;
}

std::vector<TransitionId> Alignment::log_firing_sequence() const {
    std::vector<TransitionId> out;
    for (const auto& m : moves) {
        if (m.log) out.push_back(m.log->transition);
    }
    return out;
}

std::uint32_t CostFunction::of(MoveClass c) const {
    switch (c) {
    case MoveClass::synchronous: return synchronous;
    case MoveClass::model_invisible: return model_invisible;
    case MoveClass::model_visible: return model_visible;
    case MoveClass::log_invisible: return 0;
    case MoveClass::log_visible: return log_move;
    }
    return 0;
}

std::uint64_t cost(const Alignment& a, const CostFunction& c) {
    std::uint64_t total = 0;
    for (const auto& m : a.moves) total += c.of(classify(m));
    return total;
}

namespace {

int tie_rank(MoveClass c) {
    switch (c) {
    case MoveClass::synchronous: return 0;
    case MoveClass::model_invisible:
    case MoveClass::log_invisible: return 1;
    case MoveClass::model_visible: return 2;
    case MoveClass::log_visible: return 3;
    }
    return 4;
}

using State = std::string; // one byte of token count per product place

State encode(const SystemNet& log_net, const SystemNet& model, const Marking& log_marking,
             const Marking& model_marking) {
    State s(log_net.places().size() + model.places().size(), '\0');
    auto put = [&](const SystemNet& net, const Marking& m, std::size_t shift) {
        for (const auto& [p, c] : m.tokens()) {
            if (c > 255) throw unsupported_net_error("more than 255 tokens in place '" + p + "'");
            s[*net.place_index(p) + shift] = static_cast<char>(c);
        }
    };
    put(log_net, log_marking, 0);
    put(model, model_marking, log_net.places().size());
    return s;
}

struct compiled_transition {
    std::uint64_t pre_mask; // used when the product has at most 64 places
    std::vector<std::uint32_t> pre;
    std::vector<std::uint32_t> post;
    std::uint32_t cost;
    std::size_t product_index;
};

struct node {
    std::uint64_t g;
    std::uint64_t h;
    std::uint32_t parent;
    std::uint32_t via;
};

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// Markings of fixed width packed back to back, with an open-addressing index.
class state_store {
public:
    explicit state_store(std::size_t width) : width_(width), slots_(1024, kNone) {}

    std::size_t size() const { return count_; }
    const std::uint8_t* at(std::uint32_t id) const { return arena_.data() + std::size_t{id} * width_; }

    // Returns the id of s and whether it was newly added.
    std::pair<std::uint32_t, bool> intern(const std::uint8_t* s) {
        if ((count_ + 1) * 2 > slots_.size()) grow();
        const std::size_t mask = slots_.size() - 1;
        for (std::size_t i = hash(s) & mask;; i = (i + 1) & mask) {
            if (slots_[i] == kNone) {
                slots_[i] = static_cast<std::uint32_t>(count_);
                arena_.insert(arena_.end(), s, s + width_);
                return {static_cast<std::uint32_t>(count_++), true};
            }
            if (std::memcmp(s, at(slots_[i]), width_) == 0) return {slots_[i], false};
        }
    }

private:
    std::size_t hash(const std::uint8_t* s) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ width_;
        std::size_t i = 0;
        for (; i + 8 <= width_; i += 8) {
            std::uint64_t w;
            std::memcpy(&w, s + i, 8);
            h = (h ^ w) * 0xff51afd7ed558ccdULL;
            h ^= h >> 32;
        }
        for (; i < width_; ++i) h = (h ^ s[i]) * 0x100000001b3ULL;
        return static_cast<std::size_t>(h ^ (h >> 29));
    }

    void grow() {
        std::vector<std::uint32_t> bigger(slots_.size() * 2, kNone);
        const std::size_t mask = bigger.size() - 1;
        for (std::uint32_t id = 0; id < count_; ++id) {
            std::size_t i = hash(at(id)) & mask;
            while (bigger[i] != kNone) i = (i + 1) & mask;
            bigger[i] = id;
        }
        slots_.swap(bigger);
    }

    std::size_t width_;
    std::size_t count_ = 0;
    std::vector<std::uint8_t> arena_;
    std::vector<std::uint32_t> slots_;
};

} // namespace

Alignment align(const SystemNet& log_net, const SystemNet& model, const CostFunction& c) {
    AlignOptions options;
    options.cost = c;
    return align(log_net, model, options);
}

Alignment align(const SystemNet& log_net, const SystemNet& model, const AlignOptions& options) {
    // The product net is compiled directly instead of going through product():
    // log places first, then model places; transitions named as product() would.
    const std::size_t offset = log_net.places().size();
    struct candidate {
        int rank;
        std::string id;
        Move move;
        std::vector<std::uint32_t> pre, post;
    };
    std::vector<candidate> cands;
    auto side = [](const SystemNet& net, std::size_t t, std::size_t shift, std::vector<std::uint32_t>& pre,
                   std::vector<std::uint32_t>& post) {
        for (std::size_t p : net.preset(t)) pre.push_back(static_cast<std::uint32_t>(p + shift));
        for (std::size_t p : net.postset(t)) post.push_back(static_cast<std::uint32_t>(p + shift));
    };
    for (std::size_t t = 0; t < log_net.transitions().size(); ++t) {
        const auto& tr = log_net.transitions()[t];
        candidate c{0, "(" + tr.id + "," + kNoMove + ")", Move{Step{tr.label, tr.id}, std::nullopt}, {}, {}};
        side(log_net, t, 0, c.pre, c.post);
        cands.push_back(std::move(c));
    }
    for (std::size_t u = 0; u < model.transitions().size(); ++u) {
        const auto& tr = model.transitions()[u];
        candidate c{0, std::string("(") + kNoMove + "," + tr.id + ")", Move{std::nullopt, Step{tr.label, tr.id}}, {}, {}};
        side(model, u, offset, c.pre, c.post);
        cands.push_back(std::move(c));
    }
    for (std::size_t t = 0; t < log_net.transitions().size(); ++t) {
        const auto& lt = log_net.transitions()[t];
        if (!lt.label) continue;
        for (std::size_t u = 0; u < model.transitions().size(); ++u) {
            const auto& mt = model.transitions()[u];
            if (mt.label != lt.label) continue;
            candidate c{0, "(" + lt.id + "," + mt.id + ")", Move{Step{lt.label, lt.id}, Step{mt.label, mt.id}}, {}, {}};
            side(log_net, t, 0, c.pre, c.post);
            side(model, u, offset, c.pre, c.post);
            cands.push_back(std::move(c));
        }
    }
    for (auto& c : cands) c.rank = tie_rank(classify(c.move));
    // Successors are generated in tie-break order.
    std::sort(cands.begin(), cands.end(),
              [](const candidate& x, const candidate& y) { return std::tie(x.rank, x.id) < std::tie(y.rank, y.id); });

    std::vector<Move> moves_of;
    std::vector<compiled_transition> transitions;
    transitions.reserve(cands.size());
    for (auto& c : cands) {
        compiled_transition ct;
        ct.pre = std::move(c.pre);
        ct.post = std::move(c.post);
        ct.pre_mask = 0;
        for (std::uint32_t p : ct.pre) {
            if (p < 64) ct.pre_mask |= std::uint64_t{1} << p;
        }
        ct.cost = options.cost.of(classify(c.move));
        ct.product_index = moves_of.size();
        moves_of.push_back(std::move(c.move));
        transitions.push_back(std::move(ct));
    }

    const State initial = encode(log_net, model, log_net.initial_marking(), model.initial_marking());
    const State target = encode(log_net, model, log_net.final_marking(), model.final_marking());
    const std::size_t width = initial.size();
    const bool small = width <= 64;

    state_store states(width);
    std::vector<node> nodes;
    auto heuristic = [&](const std::uint8_t* s) -> std::uint64_t {
        if (!options.heuristic) return 0;
        return options.heuristic(std::span<const std::uint8_t>(s, width));
    };

    using entry = std::tuple<std::uint64_t, std::uint64_t, std::uint32_t>; // f, sequence, state
    std::priority_queue<entry, std::vector<entry>, std::greater<>> open;
    std::uint64_t sequence = 0;

    std::vector<std::uint8_t> cur(width), next(width);
    const auto* init_bytes = reinterpret_cast<const std::uint8_t*>(initial.data());
    states.intern(init_bytes);
    nodes.push_back({0, heuristic(init_bytes), kNone, kNone});
    open.emplace(nodes[0].h, sequence++, 0);

    std::optional<std::uint32_t> goal;
    while (!open.empty()) {
        auto [f, seq, id] = open.top();
        open.pop();
        const std::uint64_t g = nodes[id].g;
        if (f != g + nodes[id].h) continue; // superseded by a cheaper path
        std::copy_n(states.at(id), width, cur.begin());
        if (std::equal(cur.begin(), cur.end(), reinterpret_cast<const std::uint8_t*>(target.data()))) {
            goal = id;
            break;
        }
        std::uint64_t marked = 0;
        if (small) {
            for (std::size_t p = 0; p < width; ++p) {
                if (cur[p]) marked |= std::uint64_t{1} << p;
            }
        }
        for (std::uint32_t k = 0; k < transitions.size(); ++k) {
            const auto& ct = transitions[k];
            if (small) {
                if (ct.pre_mask & ~marked) continue;
            } else if (std::any_of(ct.pre.begin(), ct.pre.end(), [&](std::uint32_t p) { return cur[p] == 0; })) {
                continue;
            }
            next = cur;
            for (std::uint32_t p : ct.pre) --next[p];
            for (std::uint32_t p : ct.post) {
                if (next[p] == 255) throw unsupported_net_error("more than 255 tokens in a product place");
                ++next[p];
            }
            const std::uint64_t ng = g + ct.cost;
            auto [nid, inserted] = states.intern(next.data());
            if (inserted) {
                if (states.size() > options.state_cap)
                    throw explosion_error("alignment search exceeded " + std::to_string(options.state_cap) +
                                              " markings",
                                          options.state_cap);
                nodes.push_back({ng, heuristic(next.data()), id, k});
            } else if (ng < nodes[nid].g) {
                nodes[nid].g = ng;
                nodes[nid].parent = id;
                nodes[nid].via = k;
            } else {
                continue;
            }
            open.emplace(ng + nodes[nid].h, sequence++, nid);
        }
    }
    if (!goal) throw unreachable_final_marking_error("final marking of the product net is unreachable");

    Alignment result;
    for (std::uint32_t s = *goal; nodes[s].parent != kNone; s = nodes[s].parent) {
        result.moves.push_back(moves_of[transitions[nodes[s].via].product_index]);
    }
    std::reverse(result.moves.begin(), result.moves.end());
    return result;
}

BoundResult lower_bound(const SimpleUncertainTrace& trace, const SystemNet& model, const AlignOptions& options) {
    SystemNet bn = behavior_net(trace);
    BoundResult r;
    r.alignment = align(bn, model, options);
    r.cost = cost(r.alignment, options.cost);
    r.witness = r.alignment.log_projection();
    return r;
}

namespace {

template <typename Visit>
std::size_t for_each_realization_cost(const SimpleUncertainTrace& trace, const SystemNet& model, std::size_t cap,
                                      const AlignOptions& options, Visit visit) {
    auto all = realizations(trace, cap);
    for (const auto& r : all) {
        Alignment a = align(event_net(r), model, options);
        const std::uint64_t c = cost(a, options.cost);
        visit(r, c, std::move(a));
    }
    return all.size();
}

} // namespace

BoundResult upper_bound(const SimpleUncertainTrace& trace, const SystemNet& model, std::size_t cap,
                        const AlignOptions& options) {
    std::optional<BoundResult> best;
    for_each_realization_cost(trace, model, cap, options,
                              [&](const ActivitySequence& r, std::uint64_t c, Alignment a) {
                                  if (!best || c > best->cost) best = BoundResult{c, r, std::move(a)};
                              });
    if (!best) throw internal_consistency_error("trace has no realization");
    return *best;
}

ConformanceBounds bounds_bruteforce(const SimpleUncertainTrace& trace, const SystemNet& model, std::size_t cap,
                                    const AlignOptions& options) {
    ConformanceBounds b;
    bool first = true;
    b.realization_count =
        for_each_realization_cost(trace, model, cap, options, [&](const ActivitySequence& r, std::uint64_t c, Alignment) {
            if (first || c < b.lower) {
                b.lower = c;
                b.lower_witness = r;
            }
            if (first || c > b.upper) {
                b.upper = c;
                b.upper_witness = r;
            }
            first = false;
        });
    if (first) throw internal_consistency_error("trace has no realization");
    return b;
}

namespace {

std::size_t display_width(const std::string& s) {
    std::size_t w = 0;
    for (unsigned char ch : s) {
        if ((ch & 0xC0) != 0x80) ++w;
    }
    return w;
}

std::string pad(const std::string& s, std::size_t width) { return s + std::string(width - display_width(s), ' '); }

} // namespace

std::string render(const Alignment& a) {
    const std::string no_move = "≫", tau = "τ";
    std::vector<std::string> top, bottom;
    for (const auto& m : a.moves) {
        top.push_back(m.log ? (m.log->label ? *m.log->label : tau) : no_move);
        bottom.push_back(m.model ? (m.model->label ? *m.model->label : tau) : no_move);
    }
    std::string row1 = "log   |", row2 = "model |";
    for (std::size_t i = 0; i < top.size(); ++i) {
        std::size_t w = std::max(display_width(top[i]), display_width(bottom[i]));
        row1 += " " + pad(top[i], w) + " |";
        row2 += " " + pad(bottom[i], w) + " |";
    }
    return row1 + "\n" + row2 + "\n";
}

std::string to_json(const Alignment& a) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : a.moves) {
        nlohmann::json j;
        j["class"] = to_string(classify(m));
        j["log"] = m.log && m.log->label ? nlohmann::json(*m.log->label) : nlohmann::json(nullptr);
        j["log_transition"] = m.log ? nlohmann::json(m.log->transition) : nlohmann::json(nullptr);
        j["model"] = m.model && m.model->label ? nlohmann::json(*m.model->label) : nlohmann::json(nullptr);
        j["model_transition"] = m.model ? nlohmann::json(m.model->transition) : nlohmann::json(nullptr);
        arr.push_back(std::move(j));
    }
    return arr.dump();
}

} // namespace uconf
