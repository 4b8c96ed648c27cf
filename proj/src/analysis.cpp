// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0

#include "edgeprio/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "edgeprio/pathfinder.hpp"
#include "edgeprio/simulator.hpp"

namespace edgeprio {

namespace {

using Plans = std::vector<Simulation::Plan>;

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

struct Counter {
    std::uint64_t nodes = 0;
    std::uint64_t max = 0;

    void tick()
    {
        if (++nodes > max) throw BudgetExceeded("search budget exceeded");
    }
};

Plans plans_of(const StrategyProfile& profile)
{
    return Plans(profile.begin(), profile.end());
}

// Depth-first search over the decisions of one adaptive player, in
// lexicographic order of its walk. Keeps the earliest arrival below `best`.
class ResponseSearch {
public:
    ResponseSearch(const Game& game, int player, Time horizon, Time best, Counter& counter)
        : game_(game), player_(player), horizon_(horizon), best_(best), counter_(counter)
    {
    }

    void run(Simulation& sim)
    {
        counter_.tick();
        if (sim.run() == Simulation::Status::Finished) return;
        if (sim.pending_player() != player_) throw Error("unexpected adaptive player");
        const NodeId v = sim.pending_node();
        const Time now = sim.now();
        const Time spent = sim.transit_so_far(player_);
        if (now + game_.distance_to_sink(v) >= best_) return;
        if (v == game_.sink() && !sim.taken(player_).empty()) {
            // Stopping is the lexicographically first option and nothing
            // below this node can arrive earlier.
            best_ = now;
            walk_ = sim.taken(player_);
            return;
        }
        for (EdgeId e : game_.out_edges(v)) {
            const Edge& edge = game_.edge(e);
            Time to_go = game_.distance_to_sink(edge.head);
            if (to_go >= kInfinity || spent + edge.transit + to_go > horizon_) continue;
            if (now + edge.transit + to_go >= best_) continue;
            Simulation child = sim;
            child.decide(e);
            run(child);
        }
    }

    Time best() const { return best_; }
    const Walk& walk() const { return walk_; }

private:
    const Game& game_;
    int player_;
    Time horizon_;
    Time best_;
    Walk walk_;
    Counter& counter_;
};

// Earliest arrival of `player` below `bound` over walks with transit at most
// `horizon`, or `bound` when none exists.
Time search_response(const Game& game, Plans plans, int player, Time horizon, Time bound, Counter& counter, Walk* walk = nullptr)
{
    plans[idx(player)] = std::nullopt;
    Simulation sim(game, std::move(plans), false, horizon);
    ResponseSearch search(game, player, horizon, bound, counter);
    search.run(sim);
    if (walk) *walk = search.walk();
    return search.best();
}

void walk_dfs(const Game& game, NodeId v, Time spent, Time horizon, Walk& walk, std::vector<Walk>& out, std::size_t max)
{
    if (v == game.sink() && !walk.empty()) {
        out.push_back(walk);
        if (out.size() > max) throw BudgetExceeded("walk budget exceeded");
    }
    for (EdgeId e : game.out_edges(v)) {
        const Edge& edge = game.edge(e);
        Time to_go = game.distance_to_sink(edge.head);
        if (to_go >= kInfinity || spent + edge.transit + to_go > horizon) continue;
        walk.push_back(e);
        walk_dfs(game, edge.head, spent + edge.transit, horizon, walk, out, max);
        walk.pop_back();
    }
}

// Searches for successors' walks that delay `target` beyond `limit`.
class AdversarySearch {
public:
    AdversarySearch(const Game& game, int target, Time limit, Time horizon, Counter& counter)
        : game_(game), target_(target), limit_(limit), horizon_(horizon), counter_(counter)
    {
    }

    bool delayed(Simulation& sim)
    {
        counter_.tick();
        auto status = sim.run();
        if (sim.arrived(target_)) return finish(sim, sim.arrival(target_) > limit_);
        if (status == Simulation::Status::Finished) return false;
        if (sim.now() > limit_) return finish(sim, true);
        const int p = sim.pending_player();
        const NodeId v = sim.pending_node();
        if (v == game_.sink() && !sim.taken(p).empty()) {
            Simulation child = sim;
            child.decide(std::nullopt);
            if (delayed(child)) return true;
        }
        for (EdgeId e : game_.out_edges(v)) {
            const Edge& edge = game_.edge(e);
            Time to_go = game_.distance_to_sink(edge.head);
            if (to_go >= kInfinity || sim.transit_so_far(p) + edge.transit + to_go > horizon_) continue;
            Simulation child = sim;
            child.decide(e);
            if (delayed(child)) return true;
        }
        return false;
    }

    const StrategyProfile& witness() const { return witness_; }

private:
    bool finish(const Simulation& sim, bool result)
    {
        if (result) {
            witness_.clear();
            for (int p = target_ + 1; p < sim.players(); ++p) witness_.push_back(sim.taken(p));
        }
        return result;
    }

    const Game& game_;
    int target_;
    Time limit_;
    Time horizon_;
    Counter& counter_;
    StrategyProfile witness_;
};

}  // namespace

Time resolve_horizon(const Game& game, const SearchBudget& budget)
{
    Time h = budget.horizon.value_or(game.shortest_distance() + game.players());
    if (h < 1) throw Error("horizon must be positive");
    return h;
}

std::vector<Walk> enumerate_walks(const Game& game, Time horizon, std::size_t max_walks)
{
    std::vector<Walk> out;
    Walk walk;
    walk_dfs(game, game.source(), 0, horizon, walk, out, max_walks);
    return out;
}

BestResponse best_response(const Game& game, const StrategyProfile& profile, int player, const SearchBudget& budget)
{
    validate_profile(game, profile);
    if (player < 0 || player >= game.players()) throw Error("player out of range");
    Time horizon = resolve_horizon(game, budget);
    Counter counter{0, budget.max_search_nodes};
    BestResponse result;
    result.arrival = search_response(game, plans_of(profile), player, horizon, kInfinity, counter, &result.walk);
    if (result.walk.empty()) throw Error("no walk within the horizon");
    return result;
}

PneCheck is_pne(const Game& game, const StrategyProfile& profile, const SearchBudget& budget)
{
    validate_profile(game, profile);
    PneCheck check;
    check.arrivals = simulate_arrivals(game, profile);
    Counter counter{0, budget.max_search_nodes};
    for (int i = 0; i < game.players(); ++i) {
        Time c = check.arrivals[idx(i)];
        if (c <= game.shortest_distance()) continue;
        Walk walk;
        Time best = search_response(game, plans_of(profile), i, c - 1, c, counter, &walk);
        if (best < c) {
            check.is_pne = false;
            check.deviation = Deviation{i, std::move(walk), c, best};
            return check;
        }
    }
    return check;
}

std::vector<ProfileCost> enumerate_pnes(const Game& game, const SearchBudget& budget)
{
    const int k = game.players();
    const Time horizon = resolve_horizon(game, budget);
    const Time ell = game.shortest_distance();
    std::vector<std::vector<Walk>> universe(idx(k));
    std::vector<std::uint64_t> stride(idx(k));
    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i) {
        universe[idx(i)] = enumerate_walks(game, std::min(horizon, ell + i), budget.max_walks);
        stride[idx(i)] = total;
        auto size = universe[idx(i)].size();
        if (size == 0) return {};
        if (total > budget.max_profiles / size) throw BudgetExceeded("profile budget exceeded");
        total *= size;
    }

    Counter counter{0, budget.max_search_nodes};
    std::vector<std::unordered_map<std::uint64_t, Time>> cache(idx(k));
    std::vector<std::size_t> choice(idx(k), 0);
    Plans plans(idx(k));
    std::vector<ProfileCost> result;
    for (std::uint64_t index = 0; index < total; ++index) {
        for (int i = 0; i < k; ++i) plans[idx(i)] = std::span<const EdgeId>(universe[idx(i)][choice[idx(i)]]);
        Simulation sim(game, plans);
        sim.run();
        std::vector<Time> arrivals = sim.arrivals();

        bool stable = true;
        for (int i = 0; i < k && stable; ++i) {
            Time c = arrivals[idx(i)];
            if (c <= ell) continue;
            Time best;
            if (c - 1 > horizon) {
                best = search_response(game, plans, i, c - 1, c, counter);
            } else {
                std::uint64_t key = index - choice[idx(i)] * stride[idx(i)];
                auto it = cache[idx(i)].find(key);
                if (it == cache[idx(i)].end())
                    it = cache[idx(i)].emplace(key, search_response(game, plans, i, horizon, horizon + 1, counter)).first;
                best = it->second;
            }
            stable = best >= c;
        }
        if (stable) {
            ProfileCost pc;
            for (int i = 0; i < k; ++i) pc.profile.push_back(universe[idx(i)][choice[idx(i)]]);
            pc.cost = total_cost(arrivals);
            pc.arrivals = std::move(arrivals);
            result.push_back(std::move(pc));
        }

        for (int i = 0; i < k; ++i) {
            if (++choice[idx(i)] < universe[idx(i)].size()) break;
            choice[idx(i)] = 0;
        }
    }
    std::sort(result.begin(), result.end(), [](const ProfileCost& a, const ProfileCost& b) {
        return a.cost != b.cost ? a.cost < b.cost : a.profile < b.profile;
    });
    return result;
}

MistrustCheck is_mistrustful_profile(const Game& game, const StrategyProfile& profile, const SearchBudget& budget)
{
    validate_profile(game, profile);
    const int k = game.players();
    const Time horizon = resolve_horizon(game, budget);
    Counter counter{0, budget.max_search_nodes};
    MistrustCheck check;
    for (int i = 0; i < k; ++i) {
        Plans prefix(profile.begin(), profile.begin() + i + 1);
        Time alone;
        {
            Simulation sim(game, prefix);
            sim.run();
            alone = sim.arrival(i);
        }
        if (alone > game.shortest_distance() && search_response(game, prefix, i, alone - 1, alone, counter) < alone) {
            check.mistrustful = false;
            check.player = i;
            check.reason = "not a best response to the preceding players";
            return check;
        }
        if (i + 1 == k) continue;
        Plans plans = prefix;
        plans.resize(idx(k), std::nullopt);
        Simulation sim(game, std::move(plans), false, horizon);
        AdversarySearch adversary(game, i, alone, horizon, counter);
        if (adversary.delayed(sim)) {
            check.mistrustful = false;
            check.player = i;
            check.reason = "can be delayed by the following players";
            check.delaying = adversary.witness();
            return check;
        }
    }
    return check;
}

ProfileCost social_optimum(const Game& game, const SearchBudget& budget)
{
    const int k = game.players();
    const Time ell = game.shortest_distance();

    // Incumbents: everyone on one shortest path, and the sequential equilibrium.
    ProfileCost best;
    {
        Walk shortest = enumerate_walks(game, ell, budget.max_walks).front();
        best.profile.assign(idx(k), shortest);
        best.arrivals = simulate_arrivals(game, best.profile);
        best.cost = total_cost(best.arrivals);
        auto eq = compute_equilibrium(game);
        if (eq.trace.total < best.cost) best = {eq.profile, eq.trace.arrivals, eq.trace.total};
    }

    // At most `flow` players can leave s, or reach t, per time step.
    Time out_of_s = 0;
    Time into_t = 0;
    for (EdgeId e : game.out_edges(game.source())) out_of_s += game.edge(e).capacity;
    for (EdgeId e : game.in_edges(game.sink())) into_t += game.edge(e).capacity;
    const Time flow = std::min(out_of_s, into_t);
    Time floor = 0;
    for (int j = 0; j < k; ++j) floor += ell + j / flow;

    const Time cap = best.cost - (k - 1) * ell;
    std::vector<Walk> walks = enumerate_walks(game, cap, budget.max_walks);
    std::vector<Time> transit;
    for (const Walk& w : walks) transit.push_back(walk_transit(game, w));

    Counter counter{0, budget.max_profiles};
    std::vector<std::size_t> choice(idx(k));
    Plans plans(idx(k));
    bool done = false;
    // Depth-first over profiles in lexicographic order.
    auto dfs = [&](auto&& self, int j, Time spent) -> void {
        if (done) return;
        if (j == k) {
            counter.tick();
            Simulation sim(game, plans);
            sim.run();
            auto arrivals = sim.arrivals();
            Time cost = total_cost(arrivals);
            StrategyProfile profile;
            if (cost <= best.cost) {
                for (int i = 0; i < k; ++i) profile.push_back(walks[choice[idx(i)]]);
                if (cost < best.cost || profile < best.profile) best = {std::move(profile), std::move(arrivals), cost};
            }
            if (cost == floor) done = true;
            return;
        }
        for (std::size_t w = 0; w < walks.size() && !done; ++w) {
            Time lower = std::max(floor, spent + transit[w] + (k - 1 - j) * ell);
            if (lower > best.cost) continue;
            choice[idx(j)] = w;
            plans[idx(j)] = std::span<const EdgeId>(walks[w]);
            self(self, j + 1, spent + transit[w]);
        }
    };
    dfs(dfs, 0, 0);
    return best;
}

Ratio Ratio::of(std::int64_t num, std::int64_t den)
{
    if (den == 0) throw Error("ratio with zero denominator");
    std::int64_t g = std::gcd(num, den);
    if (den < 0) g = -g;
    return {num / g, den / g};
}

std::string Ratio::to_string() const
{
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

EquilibriumReport price_metrics(const Game& game, const SearchBudget& budget)
{
    EquilibriumReport report;
    report.horizon = resolve_horizon(game, budget);
    report.optimum = social_optimum(game, budget);
    auto pnes = enumerate_pnes(game, budget);
    if (pnes.empty()) throw Error("no equilibrium within the horizon");
    report.pne_count = pnes.size();
    report.best_pne = pnes.front();
    report.worst_pne = *std::max_element(pnes.begin(), pnes.end(),
                                         [](const ProfileCost& a, const ProfileCost& b) { return a.cost < b.cost; });
    for (const ProfileCost& pc : pnes) {
        if (is_mistrustful_profile(game, pc.profile, budget).mistrustful) {
            report.best_mistrustful = pc;
            break;
        }
    }
    const Time opt = report.optimum.cost;
    report.poa = Ratio::of(report.worst_pne.cost, opt);
    report.pos = Ratio::of(report.best_pne.cost, opt);
    if (report.best_mistrustful) report.pom = Ratio::of(report.best_mistrustful->cost, opt);
    report.poa_bound = Ratio::of(game.players() + 1, 2);
    report.poa_bound_holds = report.poa <= report.poa_bound;
    return report;
}

}  // namespace edgeprio
