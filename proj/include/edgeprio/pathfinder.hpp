// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Sequential construction of a mistrustful pure Nash equilibrium: players
// are routed one after another along earliest-arrival walks in the network
// that remains after the capacity used by their predecessors.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "edgeprio/core.hpp"
#include "edgeprio/simulator.hpp"

namespace edgeprio {

/// How the last edge of each walk is chosen among the sink edges that
/// realize the current earliest arrival time.
struct SinkEdgePolicy {
    enum class Kind { ByEdgeIndex, FixedOrder, RoundRobin };

    Kind kind = Kind::ByEdgeIndex;
    std::vector<EdgeId> order;  // FixedOrder: a permutation of the sink's incoming edges

    static SinkEdgePolicy by_edge_index() { return {}; }
    static SinkEdgePolicy fixed_order(std::vector<EdgeId> order) { return {Kind::FixedOrder, std::move(order)}; }
    static SinkEdgePolicy round_robin() { return {Kind::RoundRobin, {}}; }

    /// "index", "roundrobin" or "fixed:<id>,<id>,...".
    static SinkEdgePolicy parse(const std::string& text);
    std::string to_string() const;
};

struct LabelSet {
    std::vector<Time> d;      // earliest arrival per node
    std::vector<Time> eps;    // earliest exit with free capacity per edge
    std::vector<Time> delta;  // planned departure per node, kInfinity = unset
    std::map<std::pair<EdgeId, Time>, int> usage;  // (edge, entry time) -> players
    std::size_t round_robin = 0;
    std::uint64_t operations = 0;
};

struct PlannedWalk {
    Walk walk;
    std::vector<Time> entries;  // planned entry time per walk position
    Time arrival = 0;
};

LabelSet init_labels(const Game& game);
PlannedWalk extract_walk(const Game& game, LabelSet& labels, const SinkEdgePolicy& policy);
void update_labels(const Game& game, LabelSet& labels, const PlannedWalk& planned);

struct EquilibriumResult {
    StrategyProfile profile;
    std::vector<PlannedWalk> planned;
    SimulationTrace trace;
    std::vector<std::uint64_t> operations;  // label work per player
};

/// Routes game.players() players; throws NoPathError when t is unreachable.
EquilibriumResult compute_equilibrium(const Game& game, const SinkEdgePolicy& policy = {});

}  // namespace edgeprio
