// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0

#include "edgeprio/pathfinder.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <queue>
#include <sstream>

namespace edgeprio {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

// Recomputes d from d(s) = 0, raising edge labels to what their tails allow.
void relabel(const Game& game, LabelSet& labels)
{
    std::fill(labels.d.begin(), labels.d.end(), kInfinity);
    std::vector<char> done(idx(game.node_count()), 0);
    using Item = std::pair<Time, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    labels.d[idx(game.source())] = 0;
    heap.emplace(0, game.source());
    while (!heap.empty()) {
        auto [dv, v] = heap.top();
        heap.pop();
        ++labels.operations;
        if (done[idx(v)]) continue;
        done[idx(v)] = 1;
        for (EdgeId e : game.out_edges(v)) {
            ++labels.operations;
            const Edge& edge = game.edge(e);
            Time& eps = labels.eps[idx(e)];
            eps = std::max(eps, dv + edge.transit);
            if (eps < labels.d[idx(edge.head)]) {
                labels.d[idx(edge.head)] = eps;
                heap.emplace(eps, edge.head);
            }
        }
    }
    std::fill(labels.delta.begin(), labels.delta.end(), kInfinity);
}

EdgeId choose_sink_edge(const Game& game, LabelSet& labels, const SinkEdgePolicy& policy)
{
    const Time target = labels.d[idx(game.sink())];
    auto realizes = [&](EdgeId e) { return labels.eps[idx(e)] == target; };
    auto incoming = game.in_edges(game.sink());
    switch (policy.kind) {
    case SinkEdgePolicy::Kind::ByEdgeIndex:
        for (EdgeId e : incoming)
            if (realizes(e)) return e;
        break;
    case SinkEdgePolicy::Kind::FixedOrder:
        for (EdgeId e : policy.order)
            if (realizes(e)) return e;
        break;
    case SinkEdgePolicy::Kind::RoundRobin:
        for (std::size_t i = 0; i < incoming.size(); ++i) {
            std::size_t pos = (labels.round_robin + i) % incoming.size();
            if (realizes(incoming[pos])) {
                labels.round_robin = pos + 1;
                return incoming[pos];
            }
        }
        break;
    }
    throw Error("no sink edge realizes the earliest arrival time");
}

void check_policy(const Game& game, const SinkEdgePolicy& policy)
{
    if (policy.kind != SinkEdgePolicy::Kind::FixedOrder) return;
    std::vector<EdgeId> given = policy.order;
    std::vector<EdgeId> expected(game.in_edges(game.sink()).begin(), game.in_edges(game.sink()).end());
    std::sort(given.begin(), given.end());
    if (given != expected) throw Error("fixed sink order must be a permutation of the sink's incoming edges");
}

}  // namespace

SinkEdgePolicy SinkEdgePolicy::parse(const std::string& text)
{
    if (text == "index") return by_edge_index();
    if (text == "roundrobin") return round_robin();
    if (text.rfind("fixed:", 0) == 0) {
        std::vector<EdgeId> order;
        std::stringstream in(text.substr(6));
        std::string item;
        while (std::getline(in, item, ',')) {
            try {
                std::size_t pos = 0;
                order.push_back(std::stoi(item, &pos));
                if (pos != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw MalformedInput("bad edge id '" + item + "' in sink policy");
            }
        }
        return fixed_order(std::move(order));
    }
    throw MalformedInput("unknown sink policy '" + text + "'");
}

std::string SinkEdgePolicy::to_string() const
{
    switch (kind) {
    case Kind::ByEdgeIndex: return "index";
    case Kind::RoundRobin: return "roundrobin";
    case Kind::FixedOrder: break;
    }
    std::string text = "fixed:";
    for (std::size_t i = 0; i < order.size(); ++i) text += (i ? "," : "") + std::to_string(order[i]);
    return text;
}

LabelSet init_labels(const Game& game)
{
    LabelSet labels;
    labels.d.assign(idx(game.node_count()), kInfinity);
    labels.eps.assign(idx(game.edge_count()), kInfinity);
    labels.delta.assign(idx(game.node_count()), kInfinity);
    for (EdgeId e = 0; e < game.edge_count(); ++e) {
        Time from = game.distance_from_source(game.edge(e).tail);
        if (from < kInfinity) labels.eps[idx(e)] = from + game.edge(e).transit;
    }
    for (NodeId v = 0; v < game.node_count(); ++v) labels.d[idx(v)] = game.distance_from_source(v);
    labels.operations += static_cast<std::uint64_t>(game.edge_count() + game.node_count());
    if (labels.d[idx(game.sink())] >= kInfinity) throw NoPathError();
    return labels;
}

PlannedWalk extract_walk(const Game& game, LabelSet& labels, const SinkEdgePolicy& policy)
{
    PlannedWalk planned;
    planned.arrival = labels.d[idx(game.sink())];
    EdgeId e = choose_sink_edge(game, labels, policy);
    std::vector<EdgeId> reversed{e};
    std::vector<Time> entries{labels.eps[idx(e)] - game.edge(e).transit};
    NodeId v = game.edge(e).tail;
    labels.delta[idx(v)] = entries.back();
    while (v != game.source()) {
        EdgeId best = kNoEdge;
        for (EdgeId pred : game.in_edges(v)) {
            ++labels.operations;
            if (labels.eps[idx(pred)] > labels.delta[idx(v)]) continue;
            if (best == kNoEdge || game.rank(e, pred) < game.rank(e, best)) best = pred;
        }
        if (best == kNoEdge) throw Error("inconsistent labels: no feasible predecessor");
        e = best;
        reversed.push_back(e);
        entries.push_back(labels.eps[idx(e)] - game.edge(e).transit);
        v = game.edge(e).tail;
        labels.delta[idx(v)] = entries.back();
    }
    planned.walk.assign(reversed.rbegin(), reversed.rend());
    planned.entries.assign(entries.rbegin(), entries.rend());
    return planned;
}

void update_labels(const Game& game, LabelSet& labels, const PlannedWalk& planned)
{
    for (std::size_t i = 0; i < planned.walk.size(); ++i) {
        EdgeId e = planned.walk[i];
        ++labels.operations;
        int& used = labels.usage[{e, planned.entries[i]}];
        ++used;
        if (used >= game.edge(e).capacity) {
            assert(planned.entries[i] == labels.eps[idx(e)] - game.edge(e).transit);
            labels.eps[idx(e)] += 1;
        }
    }
    relabel(game, labels);
}

EquilibriumResult compute_equilibrium(const Game& game, const SinkEdgePolicy& policy)
{
    check_policy(game, policy);
    EquilibriumResult result;
    LabelSet labels = init_labels(game);
    for (int i = 0; i < game.players(); ++i) {
        std::uint64_t before = labels.operations;
        PlannedWalk planned = extract_walk(game, labels, policy);
        update_labels(game, labels, planned);
        result.operations.push_back(labels.operations - before);
        result.profile.push_back(planned.walk);
        result.planned.push_back(std::move(planned));
    }
    result.trace = simulate(game, result.profile);
    return result;
}

}  // namespace edgeprio
