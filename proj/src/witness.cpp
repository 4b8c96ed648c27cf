// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0

#include "edgeprio/witness.hpp"

#include <algorithm>
#include <set>

namespace edgeprio {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

using Undirected = std::vector<std::vector<NodeId>>;

Undirected underlying(const Game& game)
{
    Undirected adj(idx(game.node_count()));
    for (EdgeId e = 0; e < game.edge_count(); ++e) {
        const Edge& edge = game.edge(e);
        if (edge.tail == edge.head) continue;
        adj[idx(edge.tail)].push_back(edge.head);
        adj[idx(edge.head)].push_back(edge.tail);
    }
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return adj;
}

// Routes the six hub-leaf pairs one after another through unused nodes.
class DisjointPaths {
public:
    DisjointPaths(const Undirected& adj, std::array<NodeId, 2> hubs, std::array<NodeId, 3> leaves)
        : adj_(adj), hubs_(hubs), leaves_(leaves), used_(adj.size(), 0)
    {
        for (NodeId v : hubs) used_[idx(v)] = 1;
        for (NodeId v : leaves) used_[idx(v)] = 1;
    }

    bool solve(int pair = 0)
    {
        if (pair == 6) return true;
        int h = pair / 3;
        int l = pair % 3;
        std::vector<NodeId> path{hubs_[idx(h)]};
        return extend(pair, path, leaves_[idx(l)]);
    }

    K23Witness witness() const
    {
        K23Witness w;
        w.hubs = hubs_;
        w.leaves = leaves_;
        w.paths = paths_;
        return w;
    }

private:
    bool extend(int pair, std::vector<NodeId>& path, NodeId goal)
    {
        NodeId x = path.back();
        for (NodeId y : adj_[idx(x)]) {
            if (y == goal) {
                path.push_back(y);
                paths_[idx(pair / 3)][idx(pair % 3)] = path;
                if (solve(pair + 1)) return true;
                path.pop_back();
                continue;
            }
            if (used_[idx(y)]) continue;
            used_[idx(y)] = 1;
            path.push_back(y);
            if (extend(pair, path, goal)) return true;
            path.pop_back();
            used_[idx(y)] = 0;
        }
        return false;
    }

    const Undirected& adj_;
    std::array<NodeId, 2> hubs_;
    std::array<NodeId, 3> leaves_;
    std::vector<char> used_;
    std::array<std::array<std::vector<NodeId>, 3>, 2> paths_;
};

bool distinct(const std::array<NodeId, 2>& hubs, const std::array<NodeId, 3>& leaves)
{
    std::set<NodeId> all{hubs[0], hubs[1], leaves[0], leaves[1], leaves[2]};
    return all.size() == 5;
}

}  // namespace

std::optional<K23Witness> find_k23(const Game& game, std::array<NodeId, 2> hubs, std::array<NodeId, 3> leaves)
{
    if (!distinct(hubs, leaves)) return std::nullopt;
    Undirected adj = underlying(game);
    DisjointPaths search(adj, hubs, leaves);
    if (!search.solve()) return std::nullopt;
    return search.witness();
}

std::optional<K23Witness> find_k23_witness(const Game& game, const PriorityListDraft& draft)
{
    if (draft.conflict != kNoEdge && draft.conflict_backward != kNoEdge) {
        const Edge& e = game.edge(draft.conflict);
        const Edge& e1 = game.edge(draft.conflict_backward);
        if (auto w = find_k23(game, {e.tail, e1.tail}, {game.source(), e.head, game.sink()})) return w;
    }
    return find_any_k23(game);
}

std::optional<K23Witness> find_any_k23(const Game& game)
{
    const int n = game.node_count();
    for (NodeId a = 0; a < n; ++a) {
        for (NodeId b = a + 1; b < n; ++b) {
            for (NodeId x = 0; x < n; ++x) {
                for (NodeId y = x + 1; y < n; ++y) {
                    for (NodeId z = y + 1; z < n; ++z) {
                        if (auto w = find_k23(game, {a, b}, {x, y, z})) return w;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

bool verify_k23_witness(const Game& game, const K23Witness& w)
{
    if (!distinct(w.hubs, w.leaves)) return false;
    const int n = game.node_count();
    for (NodeId v : w.hubs)
        if (v < 0 || v >= n) return false;
    for (NodeId v : w.leaves)
        if (v < 0 || v >= n) return false;
    Undirected adj = underlying(game);
    std::set<NodeId> interior;
    std::set<NodeId> branch{w.hubs[0], w.hubs[1], w.leaves[0], w.leaves[1], w.leaves[2]};
    for (std::size_t h = 0; h < 2; ++h) {
        for (std::size_t l = 0; l < 3; ++l) {
            const auto& path = w.paths[h][l];
            if (path.size() < 2 || path.front() != w.hubs[h] || path.back() != w.leaves[l]) return false;
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                NodeId x = path[i];
                NodeId y = path[i + 1];
                if (x < 0 || x >= n || y < 0 || y >= n) return false;
                if (!std::binary_search(adj[idx(x)].begin(), adj[idx(x)].end(), y)) return false;
            }
            for (std::size_t i = 1; i + 1 < path.size(); ++i) {
                if (branch.count(path[i]) || !interior.insert(path[i]).second) return false;
            }
        }
    }
    return true;
}

}  // namespace edgeprio
