// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Discrete-time execution of a routing game. Conflicts at an edge are
// resolved by the priority list of that edge, then by the time the players
// entered their current edge, then by player id.

#include <optional>
#include <span>
#include <vector>

#include "edgeprio/core.hpp"

namespace edgeprio {

struct EdgeEvent {
    EdgeId edge = kNoEdge;
    Time entry = 0;
    Time eligible = 0;  // entry + transit
    Time exit = 0;      // entry into the next edge, or arrival for the last edge

    bool operator==(const EdgeEvent&) const = default;
};

struct SimulationTrace {
    std::vector<std::vector<EdgeEvent>> events;  // per player
    std::vector<Time> arrivals;                  // C_i
    Time total = 0;                              // C(P)

    bool operator==(const SimulationTrace&) const = default;
};

/// A player competing for an edge.
struct Candidate {
    int player = 0;            // 0-based
    EdgeId current = kNoEdge;  // kNoEdge while still at the source
    Time entered = 0;          // entry time on `current`
};

/// Candidates admitted into `e` given `already` earlier admissions in the
/// same step, in admission order.
std::vector<Candidate> admission_order(const Game& game, EdgeId e, std::vector<Candidate> candidates, int already = 0);

/**
 * Resumable simulation.
 *
 * Each player follows either a fixed walk or is adaptive: whenever an
 * adaptive player becomes ready at a node, run() stops and reports a pending
 * decision, which the caller answers with decide(). Copying a Simulation
 * forks the game state, which is how the search routines branch.
 *
 * Within a step, nodes are processed in the zero-transit topological order
 * so that players crossing zero-transit edges compete at the next node in
 * the same step; out-edges of a node are processed by ascending id.
 */
class Simulation {
public:
    using Plan = std::optional<std::span<const EdgeId>>;  // nullopt = adaptive

    enum class Status { Finished, NeedDecision };

    /// `adaptive_horizon` bounds the transit of adaptive walks and is used
    /// only to size the livelock guard.
    Simulation(const Game& game, std::vector<Plan> plans, bool record = false, Time adaptive_horizon = 0);

    Status run();

    int pending_player() const { return pending_; }
    NodeId pending_node() const;
    Time now() const { return now_; }
    /// Commits the pending player to `next` (an out-edge of its node), or
    /// ends its walk when nullopt; ending is only legal at the sink.
    void decide(std::optional<EdgeId> next);

    int players() const { return static_cast<int>(agents_.size()); }
    /// True once the player has entered its final edge.
    bool arrived(int player) const { return agents_[idx(player)].arrived; }
    Time arrival(int player) const { return agents_[idx(player)].arrival; }
    Time transit_so_far(int player) const { return agents_[idx(player)].transit; }
    const Walk& taken(int player) const { return agents_[idx(player)].taken; }

    std::vector<Time> arrivals() const;
    /// Requires record = true.
    SimulationTrace trace() const;

private:
    struct Agent {
        Plan plan;
        std::size_t cursor = 0;  // next position in the fixed walk
        NodeId location = 0;
        EdgeId current = kNoEdge;
        Time entered = 0;
        Time eligible = 0;
        EdgeId next = kNoEdge;
        bool arrived = false;
        Time arrival = 0;
        Time transit = 0;
        Walk taken;
    };

    static std::size_t idx(int i) { return static_cast<std::size_t>(i); }
    void admit(int player, EdgeId e);

    const Game* game_;
    std::vector<Agent> agents_;
    bool record_;
    std::vector<std::vector<EdgeEvent>> events_;
    Time now_ = 0;
    std::size_t topo_pos_ = 0;
    int pending_ = -1;
    int remaining_;
    Time limit_;
    std::vector<int> scratch_;
    std::vector<Candidate> candidates_;
};

/// Simulates a profile of fixed walks; throws InvalidWalk on bad walks.
SimulationTrace simulate(const Game& game, const StrategyProfile& profile);
/// Arrival times only, without validation or trace recording.
std::vector<Time> simulate_arrivals(const Game& game, std::span<const Walk> profile);

Time total_cost(std::span<const Time> arrivals);

}  // namespace edgeprio
