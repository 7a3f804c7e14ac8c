#include <gtest/gtest.h>

#include "support.hpp"
#include "uconf/errors.hpp"
#include "uconf/petri.hpp"
#include "uconf/pnml.hpp"
#include "uconf/synth.hpp"

using namespace uconf;

namespace {

// p1 -> t1 -> p2 with a parallel branch through t2.
SystemNet small_net() {
    SystemNet net;
    net.add_place("p1");
    net.add_place("p2");
    net.add_place("p3");
    net.add_transition("t1", "A");
    net.add_transition("t2", "B");
    net.add_transition("t3");
    net.add_arc("p1", "t1");
    net.add_arc("t1", "p2");
    net.add_arc("p1", "t2");
    net.add_arc("t2", "p3");
    net.add_arc("p3", "t3");
    net.add_arc("t3", "p2");
    net.set_initial_marking({"p1"});
    net.set_final_marking({"p2"});
    return net;
}

} // namespace

TEST(Marking, MultisetOperations) {
    Marking m{"a", "a", "b"};
    EXPECT_EQ(m.count("a"), 2u);
    EXPECT_EQ(m.size(), 3u);
    EXPECT_TRUE(m.remove_one("a"));
    EXPECT_TRUE(m.remove_one("a"));
    EXPECT_FALSE(m.remove_one("a"));
    EXPECT_EQ(m.tokens().count("a"), 0u);
    EXPECT_EQ((Marking{"x"} + Marking{"x", "y"}), (Marking{"x", "x", "y"}));
}

TEST(SystemNet, RejectsBadConstruction) {
    SystemNet net;
    net.add_place("p");
    EXPECT_THROW(net.add_place("p"), invalid_net_error);
    EXPECT_THROW(net.add_transition("p"), invalid_net_error);
    net.add_transition("t", "A");
    EXPECT_THROW(net.add_transition("u", ""), invalid_net_error);
    EXPECT_THROW(net.add_arc("p", "p"), invalid_net_error);
    EXPECT_THROW(net.add_arc("p", "nope"), invalid_net_error);
    EXPECT_THROW(net.set_initial_marking({"q"}), invalid_marking_error);
}

TEST(SystemNet, DuplicateArcIsIgnored) {
    SystemNet net = small_net();
    const auto before = net.arcs().size();
    net.add_arc("p1", "t1");
    EXPECT_EQ(net.arcs().size(), before);
}

TEST(Firing, EnabledAndFire) {
    const SystemNet net = small_net();
    EXPECT_EQ(enabled(net, net.initial_marking()), (std::set<TransitionId>{"t1", "t2"}));
    const Marking m = fire(net, net.initial_marking(), "t2");
    EXPECT_EQ(m, Marking{"p3"});
    EXPECT_THROW(fire(net, m, "t1"), not_enabled_error);
    EXPECT_THROW(fire(net, m, "zz"), not_enabled_error);
    EXPECT_EQ(fire(net, m, "t3"), Marking{"p2"});
}

TEST(Firing, MatchesNaiveReferenceOnRandomNets) {
    Rng rng(7);
    for (int round = 0; round < 200; ++round) {
        SystemNet net;
        const std::size_t np = 2 + rng.below(4), nt = 1 + rng.below(4);
        for (std::size_t p = 0; p < np; ++p) net.add_place("p" + std::to_string(p));
        std::vector<std::set<std::string>> pre(nt), post(nt);
        for (std::size_t t = 0; t < nt; ++t) {
            const std::string id = "t" + std::to_string(t);
            net.add_transition(id, "X");
            for (std::size_t p = 0; p < np; ++p) {
                const std::string pid = "p" + std::to_string(p);
                if (rng.bernoulli(0.4)) {
                    net.add_arc(pid, id);
                    pre[t].insert(pid);
                }
                if (rng.bernoulli(0.4)) {
                    net.add_arc(id, pid);
                    post[t].insert(pid);
                }
            }
        }
        Marking m;
        for (std::size_t p = 0; p < np; ++p) m.add("p" + std::to_string(p), static_cast<unsigned>(rng.below(3)));
        for (std::size_t t = 0; t < nt; ++t) {
            const std::string id = "t" + std::to_string(t);
            bool ok = true;
            for (const auto& p : pre[t]) ok = ok && m.count(p) > 0;
            EXPECT_EQ(enabled(net, m).count(id) == 1, ok);
            if (!ok) continue;
            std::map<std::string, int> expect;
            for (const auto& [p, c] : m.tokens()) expect[p] = static_cast<int>(c);
            for (const auto& p : pre[t]) --expect[p];
            for (const auto& p : post[t]) ++expect[p];
            const Marking after = fire(net, m, id);
            for (std::size_t p = 0; p < np; ++p) {
                const std::string pid = "p" + std::to_string(p);
                EXPECT_EQ(static_cast<int>(after.count(pid)), expect[pid]);
            }
        }
    }
}

TEST(Language, SmallNet) {
    EXPECT_EQ(visible_language(small_net(), 10), (std::set<ActivitySequence>{{"A"}, {"B"}}));
}

TEST(Language, CycleIsRejected) {
    SystemNet net;
    net.add_place("p");
    net.add_place("q");
    net.add_transition("t", "A");
    net.add_arc("p", "t");
    net.add_arc("t", "p");
    net.set_initial_marking({"p"});
    net.set_final_marking({"q"});
    EXPECT_THROW(visible_language(net, 10), unsupported_net_error);
}

TEST(Language, BoundIsEnforced) {
    const SystemNet net = generate_model(6, 3);
    const auto all = visible_language(net, 100'000);
    ASSERT_GT(all.size(), 1u);
    EXPECT_THROW(visible_language(net, all.size() - 1), explosion_error);
}

TEST(EventNet, ReplaysExactlyTheTrace) {
    const ActivitySequence trace{"A", "B", "A"};
    const SystemNet en = event_net(trace);
    EXPECT_EQ(en.places().size(), 4u);
    EXPECT_EQ(en.transitions().size(), 3u);
    EXPECT_EQ(visible_language(en, 10), (std::set<ActivitySequence>{trace}));
    EXPECT_EQ(visible_language(event_net({}), 10), (std::set<ActivitySequence>{{}}));
}

TEST(Product, ShapeAndMarkings) {
    const SystemNet en = event_net({"A", "C"});
    const SystemNet model = test::sequence_model({"A", "B"});
    const ProductNet prod = product(en, model);
    // 2 log + 2 model + 1 synchronous (A)
    ASSERT_EQ(prod.net.transitions().size(), 5u);
    EXPECT_EQ(prod.net.transitions()[0].id, "(t1,>>)");
    EXPECT_EQ(prod.net.transitions()[2].id, "(>>,t1)");
    EXPECT_EQ(prod.net.transitions()[4].id, "(t1,t1)");
    EXPECT_EQ(prod.net.transitions()[4].label, std::optional<Activity>("A"));
    EXPECT_EQ(prod.net.places().size(), en.places().size() + model.places().size());
    EXPECT_EQ(prod.net.initial_marking(), (Marking{"1:p1", "2:i"}));
    EXPECT_EQ(prod.net.final_marking(), (Marking{"1:p3", "2:o"}));
    EXPECT_EQ(prod.origin[4].first, std::optional<std::size_t>(0));
    EXPECT_EQ(prod.origin[4].second, std::optional<std::size_t>(0));
}

TEST(Pnml, RoundTrip) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const SystemNet net = generate_model(2 + seed, seed);
        const std::string xml = write_pnml(net);
        const SystemNet back = read_pnml(xml);
        EXPECT_EQ(write_pnml(back), xml);
        EXPECT_EQ(back.initial_marking(), net.initial_marking());
        EXPECT_EQ(back.final_marking(), net.final_marking());
        EXPECT_EQ(visible_language(back, 100'000), visible_language(net, 100'000));
    }
}

TEST(Pnml, ReadsProMStyleInvisibleAndFinalMarkings) {
    const std::string xml = R"(<?xml version="1.0"?>
<pnml><net id="n" type="http://www.pnml.org/version-2009/grammar/ptnet"><page id="pg">
  <place id="a"><initialMarking><text>1</text></initialMarking></place>
  <place id="b"/>
  <transition id="t1"><name><text>tau</text></name>
    <toolspecific tool="ProM" version="6.4" activity="$invisible$"/></transition>
  <transition id="t2"><name><text>X</text></name></transition>
  <arc id="x1" source="a" target="t1"/><arc id="x2" source="t1" target="b"/>
</page>
<finalmarkings><marking><place idref="b"><text>1</text></place></marking></finalmarkings>
</net></pnml>)";
    const SystemNet net = read_pnml(xml);
    EXPECT_FALSE(net.transitions()[0].visible());
    EXPECT_EQ(net.transitions()[1].label, std::optional<Activity>("X"));
    EXPECT_EQ(net.final_marking(), Marking{"b"});
}

TEST(Pnml, Malformed) {
    EXPECT_THROW(read_pnml("<pnml><net>"), parse_error);
    EXPECT_THROW(read_pnml("<pnml/>"), parse_error);
}
