// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0

#include "edgeprio/core.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

namespace edgeprio {

namespace {

using Adjacency = std::vector<std::vector<EdgeId>>;

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

// Dijkstra over non-negative transit times. `forward` selects whether edges
// are followed tail->head (distances from root) or head->tail (to root).
std::vector<Time> dijkstra(const GameInstance& g, const Adjacency& adj, NodeId root, bool forward)
{
    std::vector<Time> dist(g.nodes.size(), kInfinity);
    using Item = std::pair<Time, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[idx(root)] = 0;
    heap.emplace(0, root);
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d != dist[idx(v)]) continue;
        for (EdgeId e : adj[idx(v)]) {
            const Edge& edge = g.edges[idx(e)];
            NodeId w = forward ? edge.head : edge.tail;
            Time nd = d + edge.transit;
            if (nd < dist[idx(w)]) {
                dist[idx(w)] = nd;
                heap.emplace(nd, w);
            }
        }
    }
    return dist;
}

void build_adjacency(const GameInstance& g, Adjacency& in, Adjacency& out)
{
    in.assign(g.nodes.size(), {});
    out.assign(g.nodes.size(), {});
    for (const Edge& e : g.edges) {
        out[idx(e.tail)].push_back(e.id);
        in[idx(e.head)].push_back(e.id);
    }
}

// Kahn's algorithm on the zero-transit subgraph; ties resolved by node id.
// Returns fewer than n nodes iff a zero-transit cycle exists.
std::vector<NodeId> zero_transit_topological_order(const GameInstance& g, const Adjacency& out)
{
    std::vector<int> indegree(g.nodes.size(), 0);
    for (const Edge& e : g.edges)
        if (e.transit == 0) ++indegree[idx(e.head)];
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
    for (std::size_t v = 0; v < g.nodes.size(); ++v)
        if (indegree[v] == 0) ready.push(static_cast<NodeId>(v));
    std::vector<NodeId> order;
    order.reserve(g.nodes.size());
    while (!ready.empty()) {
        NodeId v = ready.top();
        ready.pop();
        order.push_back(v);
        for (EdgeId e : out[idx(v)]) {
            const Edge& edge = g.edges[idx(e)];
            if (edge.transit == 0 && --indegree[idx(edge.head)] == 0) ready.push(edge.head);
        }
    }
    return order;
}

bool is_permutation_of(std::vector<EdgeId> list, std::vector<EdgeId> reference)
{
    std::sort(list.begin(), list.end());
    std::sort(reference.begin(), reference.end());
    return list == reference;
}

std::vector<std::vector<EdgeId>> induced_lists(const GameInstance& g, const Adjacency& in)
{
    std::vector<int> global_rank(g.edges.size(), 0);
    for (std::size_t r = 0; r < g.priority.order.size(); ++r)
        global_rank[idx(g.priority.order[r])] = static_cast<int>(r);
    std::vector<std::vector<EdgeId>> lists(g.edges.size());
    for (const Edge& e : g.edges) {
        auto& list = lists[idx(e.id)];
        list = in[idx(e.tail)];
        std::stable_sort(list.begin(), list.end(),
                         [&](EdgeId a, EdgeId b) { return global_rank[idx(a)] < global_rank[idx(b)]; });
    }
    return lists;
}

}  // namespace

PriorityScheme PriorityScheme::global(std::vector<EdgeId> order)
{
    PriorityScheme p;
    p.kind = Kind::Global;
    p.order = std::move(order);
    return p;
}

PriorityScheme PriorityScheme::local(std::vector<std::vector<EdgeId>> lists)
{
    PriorityScheme p;
    p.kind = Kind::Local;
    p.lists = std::move(lists);
    return p;
}

NodeId GameInstance::node(std::string_view name) const
{
    auto it = std::find(nodes.begin(), nodes.end(), name);
    if (it == nodes.end()) throw std::out_of_range("unknown node '" + std::string(name) + "'");
    return static_cast<NodeId>(it - nodes.begin());
}

EdgeId GameInstance::labelled_edge(std::string_view label) const
{
    auto it = std::find(metadata.edge_labels.begin(), metadata.edge_labels.end(), label);
    if (it == metadata.edge_labels.end()) throw std::out_of_range("unknown edge label '" + std::string(label) + "'");
    return static_cast<EdgeId>(it - metadata.edge_labels.begin());
}

std::string_view to_string(ViolationKind kind)
{
    switch (kind) {
    case ViolationKind::NoNodes: return "no nodes";
    case ViolationKind::DuplicateNode: return "duplicate node";
    case ViolationKind::BadEndpoint: return "bad endpoint";
    case ViolationKind::BadEdgeId: return "bad edge id";
    case ViolationKind::BadCapacity: return "bad capacity";
    case ViolationKind::BadTransit: return "bad transit";
    case ViolationKind::BadPlayers: return "bad player count";
    case ViolationKind::SourceEqualsSink: return "source equals sink";
    case ViolationKind::SourceHasIncoming: return "source has incoming edges";
    case ViolationKind::BadPriority: return "bad priority";
    case ViolationKind::ZeroCostCycle: return "zero-cost cycle";
    case ViolationKind::SinkUnreachable: return "no s-t path";
    case ViolationKind::ZeroDistance: return "s-t distance zero";
    }
    return "unknown";
}

bool ValidationReport::has(ViolationKind kind) const
{
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

InvalidInstance::InvalidInstance(ValidationReport report)
    : Error([&] {
          std::string msg = "invalid instance";
          for (const auto& v : report.violations) msg += "; " + v.message;
          return msg;
      }()),
      report_(std::move(report))
{
}

ValidationReport validate_instance(const GameInstance& g)
{
    ValidationReport report;
    auto add = [&](ViolationKind kind, std::string message) {
        report.violations.push_back({kind, std::move(message)});
    };
    const int n = static_cast<int>(g.nodes.size());
    const int m = static_cast<int>(g.edges.size());

    if (n == 0) add(ViolationKind::NoNodes, "instance has no nodes");
    {
        std::set<std::string> seen;
        for (const auto& name : g.nodes)
            if (!seen.insert(name).second) add(ViolationKind::DuplicateNode, "duplicate node '" + name + "'");
    }
    if (g.players < 1) add(ViolationKind::BadPlayers, "player count must be positive");

    bool structural = n > 0;
    auto valid_node = [&](NodeId v) { return v >= 0 && v < n; };
    if (!valid_node(g.source) || !valid_node(g.sink)) {
        add(ViolationKind::BadEndpoint, "source or sink is not a node");
        structural = false;
    }
    for (int i = 0; i < m; ++i) {
        const Edge& e = g.edges[idx(i)];
        std::string name = "edge " + std::to_string(i);
        if (e.id != i) {
            add(ViolationKind::BadEdgeId, name + " has id " + std::to_string(e.id) + " (ids must be dense and 0-based)");
            structural = false;
        }
        if (!valid_node(e.tail) || !valid_node(e.head)) {
            add(ViolationKind::BadEndpoint, name + " has an endpoint outside the node set");
            structural = false;
        }
        if (e.capacity < 1) add(ViolationKind::BadCapacity, name + " has capacity < 1");
        if (e.transit < 0) add(ViolationKind::BadTransit, name + " has negative transit time");
    }
    if (!structural) return report;

    if (g.source == g.sink) add(ViolationKind::SourceEqualsSink, "source and sink coincide");

    Adjacency in, out;
    build_adjacency(g, in, out);
    if (!in[idx(g.source)].empty()) add(ViolationKind::SourceHasIncoming, "source has incoming edges");

    if (g.priority.kind == PriorityScheme::Kind::Global) {
        std::vector<EdgeId> all(idx(m));
        for (int i = 0; i < m; ++i) all[idx(i)] = i;
        if (!is_permutation_of(g.priority.order, all))
            add(ViolationKind::BadPriority, "global order is not a permutation of all edges");
    } else if (static_cast<int>(g.priority.lists.size()) != m) {
        add(ViolationKind::BadPriority, "local scheme needs exactly one list per edge");
    } else {
        for (int i = 0; i < m; ++i) {
            if (!is_permutation_of(g.priority.lists[idx(i)], in[idx(g.edges[idx(i)].tail)]))
                add(ViolationKind::BadPriority,
                    "priority list of edge " + std::to_string(i) + " is not a permutation of the incoming edges of its tail");
        }
    }

    bool has_transit_error = std::any_of(g.edges.begin(), g.edges.end(), [](const Edge& e) { return e.transit < 0; });
    if (!has_transit_error) {
        if (static_cast<int>(zero_transit_topological_order(g, out).size()) != n)
            add(ViolationKind::ZeroCostCycle, "zero-cost cycle: a directed cycle consists of zero-transit edges only");
        auto dist = dijkstra(g, out, g.source, true);
        if (dist[idx(g.sink)] >= kInfinity)
            add(ViolationKind::SinkUnreachable, "no s-t path");
        else if (dist[idx(g.sink)] == 0 && g.source != g.sink)
            add(ViolationKind::ZeroDistance, "s-t distance zero");
    }
    return report;
}

std::vector<std::optional<Time>> transit_shortest_paths(const GameInstance& g)
{
    Adjacency in, out;
    build_adjacency(g, in, out);
    auto dist = dijkstra(g, out, g.source, true);
    if (dist[idx(g.sink)] >= kInfinity) throw NoPathError();
    std::vector<std::optional<Time>> result(dist.size());
    for (std::size_t v = 0; v < dist.size(); ++v)
        if (dist[v] < kInfinity) result[v] = dist[v];
    return result;
}

GameInstance globalize(const GameInstance& instance)
{
    if (instance.priority.kind == PriorityScheme::Kind::Local) return instance;
    Adjacency in, out;
    build_adjacency(instance, in, out);
    GameInstance result = instance;
    result.priority = PriorityScheme::local(induced_lists(instance, in));
    return result;
}

Game::Game(GameInstance instance) : instance_(std::move(instance))
{
    auto report = validate_instance(instance_);
    if (!report.ok()) throw InvalidInstance(std::move(report));

    build_adjacency(instance_, in_, out_);
    lists_ = instance_.priority.kind == PriorityScheme::Kind::Global ? induced_lists(instance_, in_) : instance_.priority.lists;

    in_position_.assign(instance_.edges.size(), 0);
    for (const auto& incoming : in_)
        for (std::size_t p = 0; p < incoming.size(); ++p) in_position_[idx(incoming[p])] = static_cast<int>(p);
    rank_.assign(instance_.edges.size(), {});
    for (const Edge& e : instance_.edges) {
        auto& table = rank_[idx(e.id)];
        table.assign(in_[idx(e.tail)].size(), -1);
        const auto& list = lists_[idx(e.id)];
        for (std::size_t r = 0; r < list.size(); ++r) table[idx(in_position_[idx(list[r])])] = static_cast<int>(r);
    }

    topo_ = zero_transit_topological_order(instance_, out_);
    dist_from_source_ = dijkstra(instance_, out_, instance_.source, true);
    dist_to_sink_ = dijkstra(instance_, in_, instance_.sink, false);
}

Game Game::with_players(int players) const
{
    GameInstance copy = instance_;
    copy.players = players;
    return Game(std::move(copy));
}

Game Game::with_priority(PriorityScheme priority) const
{
    GameInstance copy = instance_;
    copy.priority = std::move(priority);
    return Game(std::move(copy));
}

void validate_walk(const Game& game, std::span<const EdgeId> walk)
{
    if (walk.empty()) throw InvalidWalk("walk is empty");
    for (EdgeId e : walk)
        if (e < 0 || e >= game.edge_count()) throw InvalidWalk("walk uses unknown edge " + std::to_string(e));
    if (game.edge(walk.front()).tail != game.source()) throw InvalidWalk("walk does not start at the source");
    if (game.edge(walk.back()).head != game.sink()) throw InvalidWalk("walk does not end at the sink");
    for (std::size_t i = 1; i < walk.size(); ++i) {
        if (game.edge(walk[i - 1]).head != game.edge(walk[i]).tail) {
            std::ostringstream msg;
            msg << "walk is disconnected between edges " << walk[i - 1] << " and " << walk[i];
            throw InvalidWalk(msg.str());
        }
    }
}

void validate_profile(const Game& game, const StrategyProfile& profile)
{
    if (static_cast<int>(profile.size()) != game.players())
        throw InvalidWalk("profile has " + std::to_string(profile.size()) + " walks for " + std::to_string(game.players()) +
                          " players");
    for (const auto& walk : profile) validate_walk(game, walk);
}

Time walk_transit(const Game& game, std::span<const EdgeId> walk)
{
    Time total = 0;
    for (EdgeId e : walk) total += game.edge(e).transit;
    return total;
}

int node_visits(const Game& game, std::span<const EdgeId> walk, NodeId v)
{
    return static_cast<int>(std::count_if(walk.begin(), walk.end(), [&](EdgeId e) { return game.edge(e).head == v; }));
}

}  // namespace edgeprio
