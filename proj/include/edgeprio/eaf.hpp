// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Earliest arrival flows by successive shortest paths in the static residual
// network, the global priority list derived from that run, and a comparison
// between the flow and the equilibria found under the derived list.

#include <optional>
#include <vector>

#include "edgeprio/core.hpp"
#include "edgeprio/pathfinder.hpp"

namespace edgeprio {

struct ResidualArc {
    EdgeId edge = kNoEdge;
    bool forward = true;

    bool operator==(const ResidualArc&) const = default;
};

struct AugmentingPath {
    std::vector<ResidualArc> arcs;
    Time length = 0;  // forward transit minus backward transit
    int amount = 0;   // bottleneck residual capacity
};

struct EafResult {
    std::vector<AugmentingPath> paths;  // in augmentation order
    std::vector<Time> arrivals;         // per player, non-decreasing
    Time total = 0;
    /// Decomposition of the static flow after each augmentation into s-t
    /// paths, one entry per unit of flow.
    std::vector<std::vector<Walk>> phases;

    /// Players arrived at the sink by time T.
    std::int64_t cumulative(Time T) const;
    /// Distinct paths over all phases, in order of first appearance.
    std::vector<Walk> actual_paths() const;
};

/// Augments along lexicographically smallest shortest residual paths until
/// no s-t path is left. Throws NoPathError when t is unreachable.
EafResult earliest_arrival_flow(const Game& game, int players);

struct PriorityListDraft {
    enum class Status { Feasible, Infeasible };

    Status status = Status::Feasible;
    std::vector<EdgeId> list;  // the complete list when feasible
    EdgeId conflict = kNoEdge;        // edge that would be placed twice
    EdgeId conflict_backward = kNoEdge;  // the backward edge it was placed in front of
    /// Backward edges that were not yet listed when an edge had to be put in
    /// front of them; they were appended first.
    std::vector<EdgeId> appended_for_insertion;

    bool feasible() const { return status == Status::Feasible; }
};

/// Requires unit capacities (throws Error otherwise).
PriorityListDraft construct_priority_list(const Game& game, int players);
PriorityListDraft construct_priority_list(const Game& game, const EafResult& eaf);

struct EafEquilibriumReport {
    PriorityListDraft draft;
    Time eaf_cost = 0;
    std::optional<Time> pathfinder_cost;  // best over sink orders under the derived list
    std::optional<SinkEdgePolicy> best_policy;
    Time instance_cost = 0;  // best over sink orders under the instance's own priorities
    bool match = false;      // derived-list equilibrium attains the EAF cost
};

EafEquilibriumReport eaf_equilibrium_check(const Game& game, int players);

/// Every permutation of the sink's incoming edges, in lexicographic order.
std::vector<SinkEdgePolicy> all_fixed_orders(const Game& game);

}  // namespace edgeprio
