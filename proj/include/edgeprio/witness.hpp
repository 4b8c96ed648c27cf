// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Subdivisions of K_{2,3} in the underlying undirected graph. A conflict in
// the priority-list construction yields one with hubs {tail(e), tail(e1)}
// and leaves {s, head(e), t}.

#include <array>
#include <optional>
#include <vector>

#include "edgeprio/core.hpp"
#include "edgeprio/eaf.hpp"

namespace edgeprio {

struct K23Witness {
    std::array<NodeId, 2> hubs{};
    std::array<NodeId, 3> leaves{};
    /// paths[h][l] runs from hubs[h] to leaves[l] as a node sequence.
    std::array<std::array<std::vector<NodeId>, 3>, 2> paths;
};

/// Six internally disjoint hub-leaf paths with the given branch nodes.
std::optional<K23Witness> find_k23(const Game& game, std::array<NodeId, 2> hubs, std::array<NodeId, 3> leaves);
/// Tries the branch nodes implied by the conflict first, then any five nodes.
std::optional<K23Witness> find_k23_witness(const Game& game, const PriorityListDraft& draft);
std::optional<K23Witness> find_any_k23(const Game& game);
bool verify_k23_witness(const Game& game, const K23Witness& witness);

}  // namespace edgeprio
