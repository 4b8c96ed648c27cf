// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0

#include "edgeprio/generators.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace edgeprio {

namespace {

class Builder {
public:
    explicit Builder(std::string family) { g_.metadata.family = std::move(family); }

    NodeId node(const std::string& name)
    {
        g_.nodes.push_back(name);
        return static_cast<NodeId>(g_.nodes.size() - 1);
    }

    EdgeId edge(NodeId tail, NodeId head, Time transit, int capacity = 1, std::string label = {})
    {
        auto id = static_cast<EdgeId>(g_.edges.size());
        g_.edges.push_back({id, tail, head, capacity, transit});
        if (label.empty()) label = g_.nodes[static_cast<std::size_t>(tail)] + "-" + g_.nodes[static_cast<std::size_t>(head)];
        g_.metadata.edge_labels.push_back(std::move(label));
        return id;
    }

    // Global order: `first` in the given order, then every other edge by id.
    GameInstance finish(NodeId s, NodeId t, int players, const std::vector<EdgeId>& first = {})
    {
        g_.source = s;
        g_.sink = t;
        g_.players = players;
        std::vector<EdgeId> order = first;
        for (EdgeId e = 0; e < static_cast<EdgeId>(g_.edges.size()); ++e)
            if (std::find(first.begin(), first.end(), e) == first.end()) order.push_back(e);
        g_.priority = PriorityScheme::global(std::move(order));
        return std::move(g_);
    }

    void note(std::string text) { g_.metadata.notes.push_back(std::move(text)); }

private:
    GameInstance g_;
};

void require(bool condition, const std::string& message)
{
    if (!condition) throw MalformedInput(message);
}

enum class BraessCosts { Plain, Positive, PosStability };

// Path i (1 = top) is s -> a_i -> b_i -> t; cross edges b_i -> a_{i+1}.
// Edge ids: s-edges 0..b-1, middle edges b..2b-1, t-edges 2b..3b-1 (top to
// bottom), cross edges 3b..4b-2.
GameInstance braess(const std::string& family, int b, int players, BraessCosts costs)
{
    require(b >= 1, family + " needs b >= 1");
    Builder g(family);
    NodeId s = g.node("s");
    std::vector<NodeId> a, c;
    for (int i = 1; i <= b; ++i) a.push_back(g.node("a" + std::to_string(i)));
    for (int i = 1; i <= b; ++i) c.push_back(g.node("b" + std::to_string(i)));
    NodeId t = g.node("t");
    auto ub = static_cast<std::size_t>(b);
    for (std::size_t i = 0; i < ub; ++i) g.edge(s, a[i], costs == BraessCosts::Positive ? static_cast<Time>(2 * i + 1) : 1);
    for (std::size_t i = 0; i < ub; ++i) g.edge(a[i], c[i], costs == BraessCosts::Positive ? 1 : 0);
    for (std::size_t i = 0; i < ub; ++i) {
        Time transit = 0;
        if (costs == BraessCosts::Positive) transit = static_cast<Time>(2 * (ub - i) - 1);
        if (costs == BraessCosts::PosStability) transit = i + 1 < ub ? 1 : 0;
        g.edge(c[i], t, transit);
    }
    std::vector<EdgeId> cross;
    for (std::size_t i = 0; i + 1 < ub; ++i) cross.push_back(g.edge(c[i], a[i + 1], costs == BraessCosts::Positive ? 1 : 0));
    g.note("paths are numbered from the top; cross edges b_i -> a_(i+1) are prioritized");
    return g.finish(s, t, players, cross);
}

// Path i has a front part F_i and a rear part R_i. Middle paths split each
// part into an in-node and an out-node joined by a horizontal edge; the top
// and bottom paths use single nodes. The front zigzag runs downwards
// (F_i -> F_(i+1)), the rear zigzag upwards (R_(i+1) -> R_i).
GameInstance double_braess(const std::string& family, int b, int players, bool right)
{
    require(b >= 2, family + " needs b >= 2");
    Builder g(family);
    NodeId s = g.node("s");
    auto ub = static_cast<std::size_t>(b);
    std::vector<NodeId> f_in(ub), f_out(ub), r_in(ub), r_out(ub);
    for (std::size_t i = 0; i < ub; ++i) {
        std::string n = std::to_string(i + 1);
        bool single = i == 0 || i + 1 == ub;
        f_in[i] = g.node(single ? "F" + n : "F" + n + "in");
        f_out[i] = single ? f_in[i] : g.node("F" + n + "out");
    }
    for (std::size_t i = 0; i < ub; ++i) {
        std::string n = std::to_string(i + 1);
        bool single = i == 0 || i + 1 == ub;
        r_in[i] = g.node(single ? "R" + n : "R" + n + "in");
        r_out[i] = single ? r_in[i] : g.node("R" + n + "out");
    }
    NodeId t = g.node("t");

    std::vector<EdgeId> s_edges, front_zigzag, rear_zigzag;
    for (std::size_t i = 0; i < ub; ++i) s_edges.push_back(g.edge(s, f_in[i], 1));
    for (std::size_t i = 1; i + 1 < ub; ++i) g.edge(f_in[i], f_out[i], 0);
    for (std::size_t i = 0; i + 1 < ub; ++i) front_zigzag.push_back(g.edge(f_out[i], f_in[i + 1], 0));
    for (std::size_t i = 0; i < ub; ++i) g.edge(f_out[i], r_in[i], 0);
    for (std::size_t i = 1; i + 1 < ub; ++i) g.edge(r_in[i], r_out[i], 0);
    for (std::size_t i = 0; i + 1 < ub; ++i) rear_zigzag.push_back(g.edge(r_out[i + 1], r_in[i], 0));
    for (std::size_t i = 0; i < ub; ++i) g.edge(r_out[i], t, 0);

    std::vector<EdgeId> first;
    if (right) {
        first.assign(s_edges.begin(), s_edges.end() - 1);
        first.push_back(front_zigzag.back());
        first.insert(first.end(), rear_zigzag.begin(), rear_zigzag.end());
        g.note("prioritized: s-edges except the lowest, the lowest front zigzag edge, the rear zigzag");
    } else {
        first = front_zigzag;
        first.insert(first.end(), rear_zigzag.begin(), rear_zigzag.end());
        g.note("prioritized: both zigzag paths");
    }
    return g.finish(s, t, players, first);
}

// Edge e_j has id j-1: e_1 = (v,t), e_2..e_(k-1) loops at v, e_k..e_(2k-1) = (s,v).
GameInstance loop(int k, int players)
{
    require(k >= 3, "loop needs k >= 3");
    Builder g("loop");
    NodeId s = g.node("s");
    NodeId v = g.node("v");
    NodeId t = g.node("t");
    g.edge(v, t, 1, 1, "e1");
    for (int j = 2; j <= k - 1; ++j) g.edge(v, v, 1, 1, "e" + std::to_string(j));
    for (int j = k; j <= 2 * k - 1; ++j) g.edge(s, v, 1, 1, "e" + std::to_string(j));
    return g.finish(s, t, players);
}

GameInstance fig6(int players)
{
    Builder g("fig6");
    NodeId s = g.node("s");
    NodeId v = g.node("v");
    NodeId t = g.node("t");
    g.edge(s, v, 0, 2);
    g.edge(v, t, 3, 1, "v-t/upper");
    g.edge(v, t, 1, 1, "v-t/lower");
    return g.finish(s, t, players);
}

GameInstance fig7(int m, int players, Orientation orientation)
{
    require(m > 6, "fig7 needs M > 6");
    Builder g("fig7");
    NodeId s = g.node("s");
    std::vector<NodeId> v(6);
    for (int i = 1; i <= 5; ++i) v[static_cast<std::size_t>(i)] = g.node("v" + std::to_string(i));
    NodeId t = g.node("t");
    g.edge(s, v[1], 0);
    EdgeId direct = g.edge(v[1], v[2], 3);
    g.edge(v[2], t, 0);
    g.edge(s, v[5], 0);
    g.edge(s, v[3], 0);
    g.edge(v[3], v[1], 2);
    g.edge(v[1], v[4], 0);
    g.edge(v[4], t, 4);
    EdgeId detour = g.edge(v[5], v[2], 4);
    g.edge(v[5], t, m);
    g.note("the priority list of v2-t decides the equilibrium; s-v1 precedes v3-v1");
    if (orientation == Orientation::DetourFirst) return g.finish(s, t, players, {detour});
    return g.finish(s, t, players, {direct});
}

GameInstance fig8(int players, Orientation orientation)
{
    Builder g("fig8");
    NodeId s = g.node("s");
    NodeId v1 = g.node("v1");
    NodeId v2 = g.node("v2");
    NodeId v3 = g.node("v3");
    NodeId t = g.node("t");
    g.edge(s, v1, 1);
    EdgeId direct = g.edge(v1, v2, 1);
    g.edge(v2, t, 1);
    g.edge(v3, t, 3);
    g.edge(v1, t, 4);
    g.edge(s, v3, 2, 1, "s-v3/2");
    g.edge(s, v3, 3, 1, "s-v3/3");
    EdgeId detour = g.edge(v3, v2, 1);
    if (orientation == Orientation::DetourFirst) return g.finish(s, t, players, {detour});
    return g.finish(s, t, players, {direct});
}

GameInstance zero_cycle(int players)
{
    Builder g("zero-cycle");
    NodeId s = g.node("s");
    NodeId v1 = g.node("v1");
    NodeId v2 = g.node("v2");
    NodeId v3 = g.node("v3");
    NodeId v4 = g.node("v4");
    NodeId t = g.node("t");
    g.edge(s, v1, 0);
    g.edge(s, v2, 0);
    g.edge(v1, v3, 0);
    EdgeId w1 = g.edge(v3, v2, 0);
    g.edge(v2, v4, 0);
    EdgeId w2 = g.edge(v4, v1, 0);
    g.edge(v4, t, 0);
    g.edge(v3, t, 0);
    return g.finish(s, t, players, {w1, w2});
}

int uniform(std::mt19937_64& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::vector<EdgeId> shuffled_ids(std::mt19937_64& rng, std::size_t m)
{
    std::vector<EdgeId> ids(m);
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng);
    return ids;
}

GameInstance assemble(const std::string& family, int n, const std::vector<std::pair<NodeId, NodeId>>& arcs,
                      std::mt19937_64& rng, Time max_transit, int max_capacity, int players, NodeId s, NodeId t)
{
    GameInstance g;
    g.metadata.family = family;
    for (int v = 0; v < n; ++v) g.nodes.push_back(v == s ? "s" : v == t ? "t" : "v" + std::to_string(v));
    for (const auto& [tail, head] : arcs) {
        auto id = static_cast<EdgeId>(g.edges.size());
        g.edges.push_back({id, tail, head, uniform(rng, 1, max_capacity), static_cast<Time>(uniform(rng, 0, static_cast<int>(max_transit)))});
    }
    g.source = s;
    g.sink = t;
    g.players = players;
    g.priority = PriorityScheme::global(shuffled_ids(rng, g.edges.size()));
    return g;
}

}  // namespace

std::vector<std::string> families()
{
    return {"braess", "braess-positive", "pos-braess", "double-braess-left", "double-braess-right",
            "loop",   "fig6",            "fig7",       "fig8",               "zero-cycle"};
}

GameInstance generate(const FamilySpec& spec)
{
    const std::string& f = spec.family;
    int p = spec.param;
    auto players = [&](int fallback) {
        int k = spec.players.value_or(fallback);
        require(k >= 1, "player count must be positive");
        return k;
    };
    if (f == "braess") return braess(f, p, players(p), BraessCosts::Plain);
    if (f == "braess-positive") return braess(f, p, players(p), BraessCosts::Positive);
    if (f == "pos-braess") return braess(f, p, players(p), BraessCosts::PosStability);
    if (f == "double-braess-left") return double_braess(f, p, players(p), false);
    if (f == "double-braess-right") return double_braess(f, p, players(p), true);
    if (f == "loop") return loop(p, players(p));
    if (f == "fig6") return fig6(players(4));
    if (f == "fig7") return fig7(p, players(3 * p + 1), spec.orientation);
    if (f == "fig8") return fig8(players(9), spec.orientation);
    if (f == "zero-cycle") return zero_cycle(players(2));
    throw MalformedInput("unknown family '" + f + "'");
}

GameInstance random_instance(std::mt19937_64& rng, const RandomOptions& o)
{
    for (;;) {
        int n = uniform(rng, o.min_nodes, o.max_nodes);
        NodeId s = 0;
        NodeId t = n - 1;
        std::vector<std::pair<NodeId, NodeId>> arcs;
        // A backbone path keeps the sink reachable.
        std::vector<NodeId> middle;
        for (NodeId v = 1; v < t; ++v)
            if (uniform(rng, 0, 1)) middle.push_back(v);
        std::shuffle(middle.begin(), middle.end(), rng);
        NodeId prev = s;
        for (NodeId v : middle) {
            arcs.emplace_back(prev, v);
            prev = v;
        }
        arcs.emplace_back(prev, t);
        int m = uniform(rng, static_cast<int>(arcs.size()), std::max(static_cast<int>(arcs.size()), o.max_edges));
        while (static_cast<int>(arcs.size()) < m) arcs.emplace_back(uniform(rng, 0, n - 2), uniform(rng, 1, n - 1));
        std::shuffle(arcs.begin(), arcs.end(), rng);

        GameInstance g = assemble("random", n, arcs, rng, o.max_transit, o.max_capacity, uniform(rng, 1, o.max_players), s, t);
        if (o.local_priorities) {
            std::vector<std::vector<EdgeId>> lists(g.edges.size());
            for (const Edge& e : g.edges) {
                for (const Edge& in : g.edges)
                    if (in.head == e.tail) lists[static_cast<std::size_t>(e.id)].push_back(in.id);
                std::shuffle(lists[static_cast<std::size_t>(e.id)].begin(), lists[static_cast<std::size_t>(e.id)].end(), rng);
            }
            g.priority = PriorityScheme::local(std::move(lists));
        }
        if (validate_instance(g).ok()) return g;
    }
}

GameInstance random_series_parallel(std::mt19937_64& rng, int expansions, int players)
{
    for (;;) {
        int n = 2;
        std::vector<std::pair<NodeId, NodeId>> arcs{{0, 1}};
        for (int i = 0; i < expansions; ++i) {
            auto pick = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(arcs.size()) - 1));
            auto [u, v] = arcs[pick];
            if (uniform(rng, 0, 1)) {
                NodeId w = n++;
                arcs[pick] = {u, w};
                arcs.emplace_back(w, v);
            } else {
                arcs.emplace_back(u, v);
            }
        }
        // Renumber so that the sink is the last node.
        for (auto& arc : arcs) {
            for (NodeId* end : {&arc.first, &arc.second}) {
                if (*end == 1)
                    *end = n - 1;
                else if (*end == n - 1)
                    *end = 1;
            }
        }
        GameInstance g = assemble("series-parallel", n, arcs, rng, 3, 1, players, 0, n - 1);
        if (validate_instance(g).ok()) return g;
    }
}

GameInstance random_outerplanar(std::mt19937_64& rng, int nodes, int players)
{
    for (;;) {
        int n = nodes;
        std::vector<std::pair<int, int>> undirected;
        for (int i = 0; i < n; ++i) undirected.emplace_back(i, (i + 1) % n);
        auto crosses = [](std::pair<int, int> x, std::pair<int, int> y) {
            auto [a, b] = x;
            auto [c, d] = y;
            return (a < c && c < b && b < d) || (c < a && a < d && d < b);
        };
        int attempts = uniform(rng, 0, 2 * n);
        for (int i = 0; i < attempts; ++i) {
            int a = uniform(rng, 0, n - 1);
            int b = uniform(rng, 0, n - 1);
            if (a > b) std::swap(a, b);
            if (b - a < 2 || (a == 0 && b == n - 1)) continue;
            std::pair<int, int> chord{a, b};
            bool ok = std::none_of(undirected.begin(), undirected.end(), [&](const auto& other) {
                std::pair<int, int> o{std::min(other.first, other.second), std::max(other.first, other.second)};
                return o == chord || crosses(chord, o);
            });
            if (ok) undirected.push_back(chord);
        }
        // position[v] in a random order whose first node is the source and last the sink
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<NodeId> label(static_cast<std::size_t>(n));
        for (int pos = 0; pos < n; ++pos) label[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = pos;
        std::vector<std::pair<NodeId, NodeId>> arcs;
        for (auto [a, b] : undirected) {
            NodeId x = label[static_cast<std::size_t>(a)];
            NodeId y = label[static_cast<std::size_t>(b)];
            arcs.emplace_back(std::min(x, y), std::max(x, y));
        }
        GameInstance g = assemble("outerplanar", n, arcs, rng, 3, 1, players, 0, n - 1);
        if (validate_instance(g).ok()) return g;
    }
}

}  // namespace edgeprio
