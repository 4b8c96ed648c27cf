// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "edgeprio/analysis.hpp"
#include "edgeprio/generators.hpp"
#include "edgeprio/simulator.hpp"
#include "oracles.hpp"

namespace edgeprio {
namespace {

Walk braess_path(int b, int i) { return {i, b + i, 2 * b + i}; }

Walk braess_zigzag(int b)
{
    Walk w;
    for (int i = 0; i < b; ++i) {
        w.push_back(i == 0 ? 0 : 3 * b + i - 1);
        w.push_back(b + i);
    }
    w.push_back(3 * b - 1);
    return w;
}

TEST(Admission, OrdersByRankThenEntryThenId)
{
    Game g(generate({"loop", 4}));
    // e1 = (v,t) ranks the loops (ids 1,2) above the source edges (ids 3..6).
    std::vector<Candidate> c{{0, 3, 0}, {1, 2, 5}, {2, 1, 5}, {3, 1, 4}};
    auto order = admission_order(g, 0, c);
    ASSERT_EQ(order.size(), 1u);
    EXPECT_EQ(order[0].player, 3);

    Game f6(generate({"fig6"}));
    std::vector<Candidate> at_source{{2, kNoEdge, 0}, {0, kNoEdge, 0}, {1, kNoEdge, 0}};
    auto admitted = admission_order(f6, 0, at_source);
    ASSERT_EQ(admitted.size(), 2u);
    EXPECT_EQ(admitted[0].player, 0);
    EXPECT_EQ(admitted[1].player, 1);
    EXPECT_EQ(admission_order(f6, 0, at_source, 1).size(), 1u);
    EXPECT_TRUE(admission_order(f6, 0, at_source, 2).empty());
}

TEST(Simulate, BraessParallelAndZigzag)
{
    Game g(generate({"braess", 4}));
    StrategyProfile parallel, zigzag(4, braess_zigzag(4));
    for (int i = 0; i < 4; ++i) parallel.push_back(braess_path(4, i));
    auto p = simulate(g, parallel);
    EXPECT_EQ(p.arrivals, (std::vector<Time>{1, 1, 1, 1}));
    EXPECT_EQ(p.total, 4);
    auto z = simulate(g, zigzag);
    EXPECT_EQ(z.arrivals, (std::vector<Time>{1, 2, 3, 4}));
    EXPECT_EQ(z.total, 10);
}

TEST(Simulate, BraessPositiveCostsPerPlayer)
{
    Game g(generate({"braess-positive", 4}));
    StrategyProfile parallel, zigzag(4, braess_zigzag(4));
    for (int i = 0; i < 4; ++i) parallel.push_back(braess_path(4, i));
    for (const Walk& w : parallel) EXPECT_EQ(walk_transit(g, w), 9);
    EXPECT_EQ(walk_transit(g, zigzag[0]), 9);
    EXPECT_EQ(simulate(g, parallel).arrivals, (std::vector<Time>(4, 9)));
    // Players on the shared zigzag walk queue behind each other.
    EXPECT_EQ(simulate(g, zigzag).arrivals, (std::vector<Time>{9, 10, 11, 12}));
}

TEST(Simulate, LoopStaircase)
{
    // P_i = (e_(k+i-1), e_i, ..., e_1) for i < k, the last player best-responds.
    Game g(generate({"loop", 4}));
    StrategyProfile p{{3, 0}, {4, 1, 0}, {5, 2, 1, 0}, {6, 0}};
    p[3] = best_response(g, p, 3).walk;
    EXPECT_EQ(simulate(g, p).arrivals, (std::vector<Time>{2, 3, 4, 5}));
}

TEST(Simulate, Fig6Profiles)
{
    Game g(generate({"fig6"}));
    Walk lower{0, 2}, upper{0, 1};
    EXPECT_EQ(simulate(g, {lower, upper, lower, lower}).arrivals, (std::vector<Time>{1, 3, 2, 3}));
    EXPECT_EQ(simulate(g, {lower, lower, lower, upper}).arrivals, (std::vector<Time>{1, 2, 3, 4}));
    EXPECT_EQ(simulate(g, {lower, lower, lower, lower}).arrivals, (std::vector<Time>{1, 2, 3, 4}));
}

TEST(Simulate, SingleEdgeQueue)
{
    GameInstance inst;
    inst.nodes = {"s", "t"};
    inst.edges = {{0, 0, 1, 1, 2}};
    inst.sink = 1;
    inst.players = 3;
    inst.priority = PriorityScheme::global({0});
    Game g(inst);
    auto trace = simulate(g, {{0}, {0}, {0}});
    EXPECT_EQ(trace.arrivals, (std::vector<Time>{2, 3, 4}));
    EXPECT_EQ(trace.events[2][0], (EdgeEvent{0, 2, 4, 4}));
}

TEST(Simulate, ZeroTransitChainsCompeteInTheSameStep)
{
    // s -(0)-> a -(0)-> b -(1)-> t and s -(1)-> b. The player arriving over
    // the zero chain competes at b at time 0 and edge a-b outranks s-b.
    GameInstance inst;
    inst.nodes = {"s", "a", "b", "t"};
    inst.edges = {{0, 0, 1, 1, 0}, {1, 1, 2, 1, 0}, {2, 2, 3, 1, 1}, {3, 0, 2, 1, 0}};
    inst.sink = 3;
    inst.players = 2;
    inst.priority = PriorityScheme::global({1, 0, 2, 3});
    Game g(inst);
    // Player 2 (via a) beats player 1 (direct) by edge priority.
    EXPECT_EQ(simulate(g, {{3, 2}, {0, 1, 2}}).arrivals, (std::vector<Time>{2, 1}));
}

TEST(Simulate, RejectsInvalidProfiles)
{
    Game g(generate({"braess", 2}));
    EXPECT_THROW(simulate(g, {{0, 2, 4}}), InvalidWalk);
    EXPECT_THROW(simulate(g, {{0, 2, 4}, {1, 2}}), InvalidWalk);
}

TEST(Simulation, ForkedRunsAreIndependent)
{
    Game g(generate({"fig6"}));
    Walk lower{0, 2};
    std::vector<Simulation::Plan> plans{Simulation::Plan{lower}, std::nullopt};
    Simulation sim(g, plans, false, 5);
    ASSERT_EQ(sim.run(), Simulation::Status::NeedDecision);
    EXPECT_EQ(sim.pending_player(), 1);
    EXPECT_EQ(sim.pending_node(), g.source());
    sim.decide(0);
    ASSERT_EQ(sim.run(), Simulation::Status::NeedDecision);
    Simulation fork = sim;
    sim.decide(1);
    fork.decide(2);
    ASSERT_EQ(sim.run(), Simulation::Status::NeedDecision);
    sim.decide(std::nullopt);
    ASSERT_EQ(fork.run(), Simulation::Status::NeedDecision);
    fork.decide(std::nullopt);
    EXPECT_EQ(sim.run(), Simulation::Status::Finished);
    EXPECT_EQ(fork.run(), Simulation::Status::Finished);
    EXPECT_EQ(sim.arrivals(), (std::vector<Time>{1, 3}));
    EXPECT_EQ(fork.arrivals(), (std::vector<Time>{1, 2}));
    EXPECT_EQ(fork.taken(1), (Walk{0, 2}));
}

// Random profiles on random instances: the simulator agrees with the
// reference implementation and every trace invariant holds.
class RandomTraces : public ::testing::TestWithParam<bool> {};

TEST_P(RandomTraces, MatchReferenceAndInvariants)
{
    std::mt19937_64 rng(GetParam() ? 11 : 12);
    RandomOptions options{.max_nodes = 7, .max_edges = 12, .max_players = 5, .max_transit = 3, .max_capacity = 2,
                          .local_priorities = GetParam()};
    int checked = 0;
    for (int trial = 0; trial < 150; ++trial) {
        Game g(random_instance(rng, options));
        auto walks = enumerate_walks(g, g.shortest_distance() + 4, 500);
        for (int round = 0; round < 5; ++round) {
            StrategyProfile profile;
            for (int i = 0; i < g.players(); ++i)
                profile.push_back(walks[std::uniform_int_distribution<std::size_t>(0, walks.size() - 1)(rng)]);
            auto trace = simulate(g, profile);
            auto ref = oracle::reference_simulate(g.instance(), profile);
            ASSERT_EQ(trace.arrivals, ref.arrivals);
            for (std::size_t p = 0; p < profile.size(); ++p)
                for (std::size_t j = 0; j < profile[p].size(); ++j) ASSERT_EQ(trace.events[p][j].entry, ref.entries[p][j]);
            auto bad = oracle::trace_violations(g, profile, trace);
            ASSERT_TRUE(bad.empty()) << bad.front();
            EXPECT_EQ(simulate(g, profile), trace);
            EXPECT_EQ(simulate_arrivals(g, profile), trace.arrivals);
            EXPECT_EQ(trace.total, total_cost(trace.arrivals));
            ++checked;
        }
    }
    EXPECT_EQ(checked, 750);
}

INSTANTIATE_TEST_SUITE_P(Priorities, RandomTraces, ::testing::Values(false, true));

TEST(Simulate, ArrivalAtLeastWalkTransit)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        Game g(random_instance(rng, {.max_players = 4, .max_capacity = 2}));
        auto walks = enumerate_walks(g, g.shortest_distance() + 3, 200);
        StrategyProfile profile;
        for (int i = 0; i < g.players(); ++i) profile.push_back(walks[static_cast<std::size_t>(i) % walks.size()]);
        auto arrivals = simulate(g, profile).arrivals;
        for (std::size_t i = 0; i < profile.size(); ++i) EXPECT_GE(arrivals[i], walk_transit(g, profile[i]));
    }
}

}  // namespace
}  // namespace edgeprio
