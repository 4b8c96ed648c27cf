// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Named instance families and random samplers.
//
// Families: braess, braess-positive, pos-braess, double-braess-left,
// double-braess-right, loop, fig6, fig7, fig8, zero-cycle. Every generated
// edge carries a label in the metadata ("s-a1", "b2-a3", "e4", ...).

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "edgeprio/core.hpp"

namespace edgeprio {

/// Priority order of the two edges entering v2 on the way to the sink in
/// fig7 and fig8: the straight edge from v1 first, or the detour edge first.
enum class Orientation { DirectFirst, DetourFirst };

struct FamilySpec {
    std::string family;
    int param = 0;               // b for Braess variants, k for loop, M for fig7; ignored otherwise
    std::optional<int> players;  // default depends on the family
    Orientation orientation = Orientation::DirectFirst;
};

/// Throws MalformedInput for unknown families or out-of-range parameters.
GameInstance generate(const FamilySpec& spec);
std::vector<std::string> families();

struct RandomOptions {
    int min_nodes = 3;
    int max_nodes = 6;
    int max_edges = 10;
    int max_players = 3;
    Time max_transit = 2;
    int max_capacity = 1;
    bool local_priorities = false;
};

/// A valid instance with random structure, transit times and priorities.
GameInstance random_instance(std::mt19937_64& rng, const RandomOptions& options = {});
/// A two-terminal series-parallel network built by random series and
/// parallel expansions of a single edge; unit capacities.
GameInstance random_series_parallel(std::mt19937_64& rng, int expansions, int players);
/// An outer cycle with random non-crossing chords, oriented along a random
/// node order that starts at the source and ends at the sink; unit capacities.
GameInstance random_outerplanar(std::mt19937_64& rng, int nodes, int players);

}  // namespace edgeprio
