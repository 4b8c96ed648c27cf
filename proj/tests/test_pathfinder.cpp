// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "edgeprio/analysis.hpp"
#include "edgeprio/generators.hpp"
#include "edgeprio/pathfinder.hpp"
#include "oracles.hpp"

namespace edgeprio {
namespace {

std::vector<SinkEdgePolicy> policies_for(const Game& g)
{
    std::vector<SinkEdgePolicy> all{SinkEdgePolicy::by_edge_index(), SinkEdgePolicy::round_robin()};
    std::vector<EdgeId> reversed(g.in_edges(g.sink()).rbegin(), g.in_edges(g.sink()).rend());
    all.push_back(SinkEdgePolicy::fixed_order(reversed));
    return all;
}

TEST(Policy, ParseAndPrint)
{
    EXPECT_EQ(SinkEdgePolicy::parse("index").kind, SinkEdgePolicy::Kind::ByEdgeIndex);
    EXPECT_EQ(SinkEdgePolicy::parse("roundrobin").kind, SinkEdgePolicy::Kind::RoundRobin);
    auto fixed = SinkEdgePolicy::parse("fixed:11,10,9,8");
    EXPECT_EQ(fixed.order, (std::vector<EdgeId>{11, 10, 9, 8}));
    EXPECT_EQ(fixed.to_string(), "fixed:11,10,9,8");
    EXPECT_THROW(SinkEdgePolicy::parse("fixed:1,x"), MalformedInput);
    EXPECT_THROW(SinkEdgePolicy::parse("random"), MalformedInput);
    Game g(generate({"braess", 4}));
    EXPECT_THROW(compute_equilibrium(g, SinkEdgePolicy::fixed_order({8, 9})), Error);
}

TEST(Labels, InitialValues)
{
    Game fig7(generate({"fig7", 7}));
    auto labels = init_labels(fig7);
    EXPECT_EQ(labels.d[static_cast<std::size_t>(fig7.sink())], 3);
    EXPECT_EQ(labels.eps[9], 7);  // (v5,t) with transit M
    Game loop(generate({"loop", 3}));
    auto l = init_labels(loop);
    EXPECT_EQ(l.d[2], 2);
    EXPECT_EQ(l.eps[0], 2);
    EXPECT_EQ(l.eps[1], 2);  // the self-loop leaves v no earlier than 2
}

TEST(Labels, SingleEdgeUpdate)
{
    GameInstance inst;
    inst.nodes = {"s", "t"};
    inst.edges = {{0, 0, 1, 1, 1}};
    inst.sink = 1;
    inst.players = 3;
    inst.priority = PriorityScheme::global({0});
    Game g(inst);
    auto labels = init_labels(g);
    for (Time expected = 1; expected <= 3; ++expected) {
        EXPECT_EQ(labels.d[1], expected);
        auto w = extract_walk(g, labels, {});
        EXPECT_EQ(w.arrival, expected);
        update_labels(g, labels, w);
        EXPECT_EQ(labels.eps[0], expected + 1);
    }
}

TEST(Labels, CapacityTwoNeedsTwoUsesToShift)
{
    Game g(generate({"fig6"}));
    auto labels = init_labels(g);
    auto w1 = extract_walk(g, labels, {});
    EXPECT_EQ(w1.walk, (Walk{0, 2}));
    update_labels(g, labels, w1);
    EXPECT_EQ(labels.eps[0], 0);  // one free slot left at time 0
    EXPECT_EQ(labels.eps[2], 2);
    auto w2 = extract_walk(g, labels, {});
    update_labels(g, labels, w2);
    EXPECT_EQ(labels.eps[0], 1);
}

TEST(Labels, NextArrivalMatchesBruteForceBestResponse)
{
    // After the labels absorb i players, d(t) is the earliest arrival
    // available to player i+1.
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        Game g(random_instance(rng, {.max_nodes = 5, .max_edges = 8, .max_players = 3}));
        auto labels = init_labels(g);
        StrategyProfile prefix;
        for (int i = 0; i < g.players(); ++i) {
            StrategyProfile profile = prefix;
            profile.push_back(Walk{});
            Game sub = g.with_players(i + 1);
            auto [walk, arrival] = oracle::brute_best_response(sub, profile, i, labels.d[static_cast<std::size_t>(g.sink())]);
            EXPECT_EQ(arrival, labels.d[static_cast<std::size_t>(g.sink())]);
            auto planned = extract_walk(g, labels, {});
            update_labels(g, labels, planned);
            prefix.push_back(planned.walk);
        }
    }
}

TEST(Pathfinder, BraessSinkPolicies)
{
    Game g(generate({"braess", 4}));
    auto top = compute_equilibrium(g, SinkEdgePolicy::fixed_order({8, 9, 10, 11}));
    auto bottom = compute_equilibrium(g, SinkEdgePolicy::fixed_order({11, 10, 9, 8}));
    EXPECT_EQ(top.trace.total, 4);
    EXPECT_EQ(bottom.trace.total, 10);
    EXPECT_EQ(bottom.trace.arrivals, (std::vector<Time>{1, 2, 3, 4}));
    EXPECT_EQ(compute_equilibrium(g).trace.total, 4);
}

TEST(Pathfinder, LoopArrivalsAndVisits)
{
    for (int k = 3; k <= 6; ++k) {
        Game g(generate({"loop", k}));
        auto eq = compute_equilibrium(g);
        for (int i = 0; i < k; ++i) EXPECT_EQ(eq.trace.arrivals[static_cast<std::size_t>(i)], i + 2);
        EXPECT_EQ(node_visits(g, eq.profile[static_cast<std::size_t>(k - 2)], g.instance().node("v")), k - 1);
    }
}

TEST(Pathfinder, PlannedScheduleIsRealized)
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        Game g(random_instance(rng, {.max_nodes = 8, .max_edges = 14, .max_players = 6, .max_transit = 3,
                                     .max_capacity = 2, .local_priorities = trial % 2 == 1}));
        for (const auto& policy : policies_for(g)) {
            auto eq = compute_equilibrium(g, policy);
            const Time l = g.shortest_distance();
            for (std::size_t i = 0; i < eq.profile.size(); ++i) {
                const auto& walk = eq.profile[i];
                // no displacement: planned entries are the simulated ones
                for (std::size_t j = 0; j < walk.size(); ++j) ASSERT_EQ(eq.trace.events[i][j].entry, eq.planned[i].entries[j]);
                EXPECT_EQ(eq.trace.arrivals[i], eq.planned[i].arrival);
                std::set<EdgeId> distinct(walk.begin(), walk.end());
                EXPECT_EQ(distinct.size(), walk.size());
                EXPECT_LE(eq.trace.arrivals[i], l + static_cast<Time>(i));
                if (i > 0) {
                    EXPECT_GE(eq.trace.arrivals[i], eq.trace.arrivals[i - 1]);
                    EXPECT_LE(eq.trace.arrivals[i], eq.trace.arrivals[i - 1] + 1);
                }
            }
            EXPECT_EQ(eq.trace.arrivals.front(), l);
        }
    }
}

TEST(Pathfinder, OutputsArePneOnSmallRandomInstances)
{
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 40; ++trial) {
        Game g(random_instance(rng, {.max_nodes = 5, .max_edges = 8, .max_players = 3}));
        auto eq = compute_equilibrium(g);
        EXPECT_TRUE(oracle::brute_is_pne(g, eq.profile));
        EXPECT_TRUE(is_pne(g, eq.profile).is_pne);
    }
}

TEST(Pathfinder, OperationCountScalesWithGraphSize)
{
    auto per_player = [](int b) {
        Game g(generate({"braess", b}));
        auto eq = compute_equilibrium(g);
        std::uint64_t worst = 0;
        for (auto ops : eq.operations) worst = std::max(worst, ops);
        return worst;
    };
    for (int b : {4, 8, 16}) {
        double ratio = static_cast<double>(per_player(2 * b)) / static_cast<double>(per_player(b));
        EXPECT_LE(ratio, 4.0) << "b=" << b;
    }
}

}  // namespace
}  // namespace edgeprio
