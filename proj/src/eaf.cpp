// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0

#include "edgeprio/eaf.hpp"

#include <algorithm>
#include <limits>

namespace edgeprio {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

struct Arc {
    NodeId from;
    NodeId to;
    Time cost;
    ResidualArc ref;
};

std::vector<Arc> residual_arcs(const Game& game, const std::vector<int>& flow)
{
    std::vector<Arc> arcs;
    for (EdgeId e = 0; e < game.edge_count(); ++e) {
        const Edge& edge = game.edge(e);
        if (flow[idx(e)] < edge.capacity) arcs.push_back({edge.tail, edge.head, edge.transit, {e, true}});
        if (flow[idx(e)] > 0) arcs.push_back({edge.head, edge.tail, -edge.transit, {e, false}});
    }
    return arcs;
}

// Lexicographically smallest simple path over tight arcs; arcs are ordered
// by edge id, forward before backward.
bool tight_dfs(NodeId x, NodeId t, const std::vector<std::vector<const Arc*>>& out, const std::vector<char>& reaches,
               std::vector<char>& on_path, std::vector<const Arc*>& path)
{
    if (x == t) return true;
    on_path[idx(x)] = 1;
    for (const Arc* a : out[idx(x)]) {
        if (on_path[idx(a->to)] || !reaches[idx(a->to)]) continue;
        path.push_back(a);
        if (tight_dfs(a->to, t, out, reaches, on_path, path)) return true;
        path.pop_back();
    }
    on_path[idx(x)] = 0;
    return false;
}

std::optional<AugmentingPath> shortest_residual_path(const Game& game, const std::vector<int>& flow)
{
    const int n = game.node_count();
    std::vector<Arc> arcs = residual_arcs(game, flow);
    std::vector<Time> dist(idx(n), kInfinity);
    dist[idx(game.source())] = 0;
    for (int round = 0; round < n; ++round) {
        bool changed = false;
        for (const Arc& a : arcs) {
            if (dist[idx(a.from)] >= kInfinity) continue;
            if (dist[idx(a.from)] + a.cost < dist[idx(a.to)]) {
                dist[idx(a.to)] = dist[idx(a.from)] + a.cost;
                changed = true;
            }
        }
        if (!changed) break;
        if (round == n - 1) throw Error("negative cycle in the residual network");
    }
    if (dist[idx(game.sink())] >= kInfinity) return std::nullopt;

    std::vector<std::vector<const Arc*>> out(idx(n)), in(idx(n));
    for (const Arc& a : arcs) {
        if (dist[idx(a.from)] < kInfinity && dist[idx(a.from)] + a.cost == dist[idx(a.to)]) {
            out[idx(a.from)].push_back(&a);
            in[idx(a.to)].push_back(&a);
        }
    }
    std::vector<char> reaches(idx(n), 0);
    std::vector<NodeId> stack{game.sink()};
    reaches[idx(game.sink())] = 1;
    while (!stack.empty()) {
        NodeId y = stack.back();
        stack.pop_back();
        for (const Arc* a : in[idx(y)]) {
            if (!reaches[idx(a->from)]) {
                reaches[idx(a->from)] = 1;
                stack.push_back(a->from);
            }
        }
    }
    std::vector<char> on_path(idx(n), 0);
    std::vector<const Arc*> path;
    if (!tight_dfs(game.source(), game.sink(), out, reaches, on_path, path)) throw Error("no simple tight path");

    AugmentingPath result;
    result.length = dist[idx(game.sink())];
    result.amount = std::numeric_limits<int>::max();
    for (const Arc* a : path) {
        result.arcs.push_back(a->ref);
        const EdgeId e = a->ref.edge;
        int residual = a->ref.forward ? game.edge(e).capacity - flow[idx(e)] : flow[idx(e)];
        result.amount = std::min(result.amount, residual);
    }
    return result;
}

std::vector<Walk> decompose(const Game& game, std::vector<int> flow)
{
    std::vector<Walk> walks;
    for (;;) {
        Walk walk;
        std::vector<NodeId> nodes{game.source()};
        NodeId x = game.source();
        bool stuck = false;
        while (x != game.sink()) {
            EdgeId next = kNoEdge;
            for (EdgeId e : game.out_edges(x)) {
                if (flow[idx(e)] > 0) {
                    next = e;
                    break;
                }
            }
            if (next == kNoEdge) {
                stuck = true;
                break;
            }
            walk.push_back(next);
            x = game.edge(next).head;
            auto seen = std::find(nodes.begin(), nodes.end(), x);
            if (seen != nodes.end()) {
                // Cancel the flow cycle and start over.
                auto from = static_cast<std::size_t>(seen - nodes.begin());
                for (std::size_t i = from; i < walk.size(); ++i) --flow[idx(walk[i])];
                walk.clear();
                nodes.assign(1, game.source());
                x = game.source();
                continue;
            }
            nodes.push_back(x);
        }
        if (stuck || walk.empty()) break;
        for (EdgeId e : walk) --flow[idx(e)];
        walks.push_back(std::move(walk));
    }
    return walks;
}

template <typename T>
void permute(std::vector<T>& items, std::size_t from, std::vector<std::vector<T>>& out)
{
    if (from == items.size()) {
        out.push_back(items);
        return;
    }
    for (std::size_t i = from; i < items.size(); ++i) {
        std::swap(items[from], items[i]);
        permute(items, from + 1, out);
        std::swap(items[from], items[i]);
    }
}

Time best_equilibrium_cost(const Game& game, std::optional<SinkEdgePolicy>* best_policy = nullptr)
{
    Time best = kInfinity;
    for (const SinkEdgePolicy& policy : all_fixed_orders(game)) {
        Time cost = compute_equilibrium(game, policy).trace.total;
        if (cost < best) {
            best = cost;
            if (best_policy) *best_policy = policy;
        }
    }
    return best;
}

}  // namespace

std::int64_t EafResult::cumulative(Time T) const
{
    std::int64_t total_arrived = 0;
    for (const AugmentingPath& p : paths)
        if (T >= p.length) total_arrived += static_cast<std::int64_t>(p.amount) * (T - p.length + 1);
    return total_arrived;
}

std::vector<Walk> EafResult::actual_paths() const
{
    std::vector<Walk> result;
    for (const auto& phase : phases)
        for (const Walk& w : phase)
            if (std::find(result.begin(), result.end(), w) == result.end()) result.push_back(w);
    return result;
}

EafResult earliest_arrival_flow(const Game& game, int players)
{
    if (players < 0) throw Error("player count must be non-negative");
    EafResult result;
    std::vector<int> flow(idx(game.edge_count()), 0);
    int cap = 1;
    for (EdgeId e : game.out_edges(game.source())) cap += game.edge(e).capacity;
    for (int round = 0; round < cap; ++round) {
        auto path = shortest_residual_path(game, flow);
        if (!path) break;
        for (const ResidualArc& a : path->arcs) flow[idx(a.edge)] += a.forward ? path->amount : -path->amount;
        result.paths.push_back(std::move(*path));
        result.phases.push_back(decompose(game, flow));
    }
    if (result.paths.empty()) throw NoPathError();

    Time T = result.paths.front().length;
    for (int j = 1; j <= players; ++j) {
        while (result.cumulative(T) < j) ++T;
        result.arrivals.push_back(T);
        result.total += T;
    }
    return result;
}

PriorityListDraft construct_priority_list(const Game& game, int players)
{
    return construct_priority_list(game, earliest_arrival_flow(game, players));
}

PriorityListDraft construct_priority_list(const Game& game, const EafResult& eaf)
{
    for (EdgeId e = 0; e < game.edge_count(); ++e)
        if (game.edge(e).capacity != 1) throw Error("priority-list construction requires unit capacities");

    PriorityListDraft draft;
    std::vector<char> used(idx(game.edge_count()), 0);
    auto listed = [&](EdgeId e) { return std::find(draft.list.begin(), draft.list.end(), e) != draft.list.end(); };

    for (const AugmentingPath& path : eaf.paths) {
        for (std::size_t i = 0; i + 1 < path.arcs.size() && draft.feasible(); ++i) {
            const ResidualArc& a = path.arcs[i];
            const ResidualArc& b = path.arcs[i + 1];
            if (!a.forward) continue;
            if (b.forward) {
                if (!used[idx(a.edge)]) draft.list.push_back(a.edge);
                continue;
            }
            if (listed(a.edge)) {
                draft.status = PriorityListDraft::Status::Infeasible;
                draft.conflict = a.edge;
                draft.conflict_backward = b.edge;
                draft.list.push_back(a.edge);
                break;
            }
            if (!listed(b.edge)) {
                draft.list.push_back(b.edge);
                draft.appended_for_insertion.push_back(b.edge);
            }
            draft.list.insert(std::find(draft.list.begin(), draft.list.end(), b.edge), a.edge);
        }
        if (!draft.feasible()) break;
        for (const ResidualArc& a : path.arcs)
            if (a.forward) used[idx(a.edge)] = 1;
    }
    if (draft.feasible()) {
        for (EdgeId e = 0; e < game.edge_count(); ++e)
            if (!listed(e)) draft.list.push_back(e);
    }
    return draft;
}

std::vector<SinkEdgePolicy> all_fixed_orders(const Game& game)
{
    std::vector<EdgeId> incoming(game.in_edges(game.sink()).begin(), game.in_edges(game.sink()).end());
    std::vector<std::vector<EdgeId>> orders;
    permute(incoming, 0, orders);
    std::sort(orders.begin(), orders.end());
    std::vector<SinkEdgePolicy> policies;
    for (auto& order : orders) policies.push_back(SinkEdgePolicy::fixed_order(std::move(order)));
    return policies;
}

EafEquilibriumReport eaf_equilibrium_check(const Game& game, int players)
{
    Game sized = game.with_players(players);
    EafResult eaf = earliest_arrival_flow(sized, players);
    EafEquilibriumReport report;
    report.draft = construct_priority_list(sized, eaf);
    report.eaf_cost = eaf.total;
    report.instance_cost = best_equilibrium_cost(sized);
    if (report.draft.feasible()) {
        Game derived = sized.with_priority(PriorityScheme::global(report.draft.list));
        report.pathfinder_cost = best_equilibrium_cost(derived, &report.best_policy);
        report.match = *report.pathfinder_cost == report.eaf_cost;
    }
    return report;
}

}  // namespace edgeprio
