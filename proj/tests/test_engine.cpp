#include "gdmatch/engine.hpp"
#include "gdmatch/errors.hpp"
#include "gdmatch/generators.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace gdm;
using gdm::test::line_instance;
using gdm::test::q;

namespace {

Scalar objective(const GreedyDual& gd)
{
    Scalar sum;
    for (const SetRecord& s : gd.sets()) sum += Scalar(static_cast<int>(s.sur)) * s.y;
    return sum;
}

std::vector<std::string_view> kinds(const EventLog& log)
{
    std::vector<std::string_view> out;
    for (const Event& ev : log) out.push_back(ev.kind());
    return out;
}

} // namespace

TEST(Engine, SamePointMatchesAtOnce)
{
    RunResult r = run(line_instance(Variant::mpmd, {{q(3), q(0)}, {q(3), q(0)}}));
    ASSERT_EQ(r.matching.size(), 1u);
    EXPECT_EQ(r.matching[0].time, q(0));
    EXPECT_EQ(r.total_cost, q(0));
    EXPECT_EQ(r.dual_objective, q(0));
}

TEST(Engine, TwoRequestsMeetHalfway)
{
    RunResult r = run(line_instance(Variant::mpmd, {{q(0), q(0)}, {q(6), q(0)}}));
    ASSERT_EQ(r.matching.size(), 1u);
    EXPECT_EQ(r.matching[0].time, q(3));
    EXPECT_EQ(r.connection_cost, q(6));
    EXPECT_EQ(r.waiting_cost, q(6));
    EXPECT_EQ(r.dual_objective, q(6));
    EXPECT_EQ(r.total_cost, q(12));
    EXPECT_EQ(kinds(r.events), (std::vector<std::string_view>{"arrival", "arrival", "grow", "grow", "tight", "merge", "match"}));
    ASSERT_EQ(r.marked.size(), 1u);
    EXPECT_EQ(r.marked[0], (RequestPair{0, 1}));
}

TEST(Engine, ArrivalCanBeTightImmediately)
{
    RunResult r = run(line_instance(Variant::mpmd, {{q(1), q(0)}, {q(1), q(5)}}));
    ASSERT_EQ(r.matching.size(), 1u);
    EXPECT_EQ(r.matching[0].time, q(5));
    EXPECT_EQ(r.waiting_cost, q(5));
    EXPECT_EQ(r.dual_objective, q(5));
    EXPECT_EQ(r.connection_cost, q(0));
}

TEST(Engine, SimultaneousTightPairsCascade)
{
    RunResult r = run(line_instance(Variant::mpmd, {{q(0), q(0)}, {q(2), q(0)}, {q(4), q(0)}, {q(100), q(0)}}));
    ASSERT_EQ(r.matching.size(), 2u);
    EXPECT_EQ(r.matching[0].u, 0u);
    EXPECT_EQ(r.matching[0].v, 1u);
    EXPECT_EQ(r.matching[0].time, q(1));
    EXPECT_EQ(r.matching[1].u, 2u);
    EXPECT_EQ(r.matching[1].v, 3u);
    EXPECT_EQ(r.matching[1].time, q(48));
    EXPECT_EQ(r.connection_cost, q(98));
    EXPECT_EQ(r.waiting_cost, q(98));
    EXPECT_EQ(r.dual_objective, q(98));
    EXPECT_EQ(r.marked, (std::vector<RequestPair>{{0, 1}, {1, 2}, {2, 3}}));
}

TEST(Engine, StepwiseDriving)
{
    Instance inst = line_instance(Variant::mpmd, {{q(0), q(0)}, {q(6), q(0)}, {q(0), q(3)}, {q(6), q(3)}});
    GreedyDual gd(inst);
    NextEvent e = gd.next_event_time();
    EXPECT_EQ(e.time, q(0));
    EXPECT_EQ(e.kind, NextEventKind::arrival);
    gd.advance_to(e.time);
    EXPECT_EQ(gd.on_arrival(), 0u);
    EXPECT_EQ(gd.on_arrival(), 1u);
    gd.process_tight();
    EXPECT_TRUE(gd.is_free(0));
    EXPECT_NE(gd.active_set(0), gd.active_set(1));

    // The tight constraint at 3 coincides with the next arrivals; arrivals come first.
    e = gd.next_event_time();
    EXPECT_EQ(e.time, q(3));
    EXPECT_EQ(e.kind, NextEventKind::arrival);

    gd.advance_to(q(2));
    EXPECT_EQ(gd.potential(0), q(2));
    EXPECT_EQ(gd.constraint_value(0, 1), q(4));
    EXPECT_EQ(objective(gd), q(4));
    gd.check_invariants();

    gd.advance_to(q(3));
    gd.on_arrival();
    gd.on_arrival();
    gd.process_tight();
    gd.check_invariants();
    ASSERT_EQ(gd.matching().size(), 2u);
    EXPECT_EQ(gd.matching()[0].u, 0u);
    EXPECT_EQ(gd.matching()[0].v, 1u);
    EXPECT_EQ(gd.matching()[1].u, 2u);
    EXPECT_EQ(gd.matching()[1].v, 3u);
    EXPECT_TRUE(gd.finished());
}

TEST(Engine, SurplusTwoSetGrowsObjectiveTwiceAsFast)
{
    // c-, b+, d+, a+ at time 0; two late negatives finish the run.
    Instance inst = line_instance(Variant::mbpmd, {{q(0), q(0), -1}, {q(2), q(0), 1}, {q(-4), q(0), 1}, {q(10), q(0), 1},
                                                  {q(0), q(20), -1}, {q(10), q(20), -1}});
    GreedyDual gd(inst);
    for (int i = 0; i < 4; ++i) gd.on_arrival();
    gd.process_tight();
    for (Scalar t : {q(1), q(3), q(6)}) {
        NextEvent e = gd.next_event_time();
        ASSERT_EQ(e.kind, NextEventKind::tight);
        ASSERT_EQ(e.time, t);
        gd.advance_to(t);
        gd.process_tight();
        gd.check_invariants();
    }
    const SetRecord& top = gd.sets().at(gd.active_set(3));
    EXPECT_EQ(top.members, (std::vector<RequestId>{0, 1, 2, 3}));
    EXPECT_EQ(top.sur, 2u);
    EXPECT_EQ(top.status, SetStatus::growing);
    Scalar before = objective(gd);
    gd.advance_to(q(7));
    EXPECT_EQ(objective(gd) - before, q(2));

    RunResult r = run(inst, {.check_invariants = true});
    EXPECT_EQ(r.waiting_cost, r.dual_objective);
}

TEST(Engine, TightnessInstanceBehaviour)
{
    for (std::size_t m : {2u, 4u, 10u}) {
        for (Variant variant : {Variant::mpmd, Variant::mbpmd}) {
            Instance inst = tightness_instance(m, variant);
            RunResult r = run(inst, {.check_invariants = true});
            ASSERT_EQ(r.matching.size(), m);
            const Scalar eps = q(1, m);
            EXPECT_EQ(r.matching[0].time, q(1));
            for (const MatchedPair& p : r.matching) {
                EXPECT_EQ(inst.distance(p.u, p.v), q(2));
                if (inst.request(p.u).atime > q(0)) EXPECT_EQ(p.time, inst.request(p.u).atime + eps);
            }
            EXPECT_EQ(r.connection_cost, q(static_cast<long>(2 * m)));
            EXPECT_EQ(r.total_cost, q(static_cast<long>(2 * m + 2)) + q(2 * static_cast<long>(m - 1), m));
        }
    }
}

TEST(Engine, StepsRejectMisuse)
{
    Instance inst = line_instance(Variant::mpmd, {{q(0), q(0)}, {q(6), q(1)}});
    GreedyDual gd(inst);
    gd.on_arrival();
    EXPECT_THROW(gd.on_arrival(), EnginePanic);
    EXPECT_THROW(gd.advance_to(q(5)), EnginePanic);
}

// Property: structural invariants hold after every batch of a random corpus.
TEST(EngineProperty, InvariantsHoldOnCorpus)
{
    for (const Instance& inst : gdm::test::small_corpus(150)) {
        RunResult r = run(inst, {.check_invariants = true});
        EXPECT_EQ(r.matching.size(), inst.m());
        EXPECT_EQ(r.waiting_cost, r.dual_objective);
        EXPECT_EQ(r.total_cost, r.connection_cost + r.waiting_cost);
    }
}

// Property: the engine agrees with a naive re-summing simulation.
TEST(EngineProperty, AgreesWithReferenceSimulation)
{
    auto corpus = gdm::test::small_corpus(200, 1000);
    for (std::size_t m : {2u, 4u, 6u}) {
        corpus.push_back(tightness_instance(m, Variant::mpmd));
        corpus.push_back(tightness_instance(m, Variant::mbpmd));
    }
    corpus.push_back(ring_instance(6));
    for (const Instance& inst : corpus) {
        RunResult r = run(inst);
        auto ref = gdm::test::reference_greedy_dual(inst);
        ASSERT_EQ(r.matching.size(), ref.matching.size());
        for (std::size_t i = 0; i < ref.matching.size(); ++i) {
            EXPECT_EQ(ordered(r.matching[i].u, r.matching[i].v), ordered(std::get<0>(ref.matching[i]), std::get<1>(ref.matching[i])));
            EXPECT_EQ(r.matching[i].time, std::get<2>(ref.matching[i]));
        }
        EXPECT_EQ(r.dual_objective, ref.dual_objective);
    }
}
