// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exhaustive oracles for small games: walk enumeration, best responses,
// equilibrium checks and enumeration, mistrust, social optimum and the
// prices of anarchy, stability and mistrust.
//
// Searches are bounded by an arrival horizon H (default ℓ + k). Best
// responses are found by branching a simulation at every decision of the
// responding player, which covers exactly the walks of transit at most H.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edgeprio/core.hpp"

namespace edgeprio {

struct SearchBudget {
    std::optional<Time> horizon;  // default ℓ + k
    std::size_t max_walks = 2'000'000;
    std::uint64_t max_profiles = 50'000'000;
    std::uint64_t max_search_nodes = 200'000'000;
};

Time resolve_horizon(const Game& game, const SearchBudget& budget);

/// Every s-t walk of transit at most `horizon`, in lexicographic order.
/// Throws BudgetExceeded("walk budget") beyond `max_walks`.
std::vector<Walk> enumerate_walks(const Game& game, Time horizon, std::size_t max_walks = 2'000'000);

struct BestResponse {
    Walk walk;
    Time arrival = 0;
};

/// Earliest-arriving walk of `player` (0-based) against the other walks of
/// `profile`; ties go to the lexicographically smallest walk.
BestResponse best_response(const Game& game, const StrategyProfile& profile, int player, const SearchBudget& budget = {});

struct Deviation {
    int player = 0;  // 0-based
    Walk walk;
    Time before = 0;
    Time after = 0;
};

struct PneCheck {
    bool is_pne = true;
    std::optional<Deviation> deviation;  // lowest player with an improving move
    std::vector<Time> arrivals;
};

/// Exact: a deviation that improves on C_i has transit below C_i, so the
/// search for player i covers all walks of transit at most C_i - 1.
PneCheck is_pne(const Game& game, const StrategyProfile& profile, const SearchBudget& budget = {});

struct ProfileCost {
    StrategyProfile profile;
    std::vector<Time> arrivals;
    Time cost = 0;
};

/// All equilibria whose walks fit the horizon, sorted by cost, then profile.
/// Player i only draws from walks of transit at most min(H, ℓ + i - 1),
/// since no equilibrium lets player i arrive later than ℓ + i - 1.
std::vector<ProfileCost> enumerate_pnes(const Game& game, const SearchBudget& budget = {});

struct MistrustCheck {
    bool mistrustful = true;
    int player = -1;  // first failing player, 0-based
    std::string reason;
    StrategyProfile delaying;  // adversary prefixes that delay `player`, when found
};

/// Every player's walk must be a best response to its predecessors alone,
/// and no choice of walks (transit at most H) by its successors may delay it.
MistrustCheck is_mistrustful_profile(const Game& game, const StrategyProfile& profile, const SearchBudget& budget = {});

/// Minimum total cost; throws BudgetExceeded when the search is too large.
ProfileCost social_optimum(const Game& game, const SearchBudget& budget = {});

struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Ratio of(std::int64_t num, std::int64_t den);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const;
    friend bool operator==(const Ratio& a, const Ratio& b) { return a.num * b.den == b.num * a.den; }
    friend bool operator<(const Ratio& a, const Ratio& b) { return a.num * b.den < b.num * a.den; }
    friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
};

struct EquilibriumReport {
    Time horizon = 0;
    ProfileCost optimum;
    std::size_t pne_count = 0;
    ProfileCost best_pne;
    ProfileCost worst_pne;
    std::optional<ProfileCost> best_mistrustful;  // nullopt when no enumerated PNE is mistrustful
    Ratio poa;
    Ratio pos;
    std::optional<Ratio> pom;
    Ratio poa_bound;  // (k+1)/2
    bool poa_bound_holds = true;
};

/// Throws Error when no equilibrium exists within the horizon.
EquilibriumReport price_metrics(const Game& game, const SearchBudget& budget = {});

}  // namespace edgeprio
