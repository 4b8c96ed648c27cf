// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Independent reference computations used to cross-check the library. They
// share only the data types with the code under test.

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "edgeprio/core.hpp"
#include "edgeprio/simulator.hpp"

namespace edgeprio::oracle {

inline std::size_t at(int i) { return static_cast<std::size_t>(i); }

// ---------------------------------------------------------------- walks

/// Number of s-t walks with transit at most `budget`, by memoized recursion.
inline std::int64_t count_walks(const GameInstance& g, Time budget)
{
    std::map<std::pair<NodeId, Time>, std::int64_t> memo;
    auto f = [&](auto&& self, NodeId v, Time left) -> std::int64_t {
        auto key = std::make_pair(v, left);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        std::int64_t count = 0;
        for (const Edge& e : g.edges) {
            if (e.tail != v || e.transit > left) continue;
            count += (e.head == g.sink ? 1 : 0) + self(self, e.head, left - e.transit);
        }
        memo[key] = count;
        return count;
    };
    return f(f, g.source, budget);
}

/// All s-t walks with transit at most `budget`, without distance pruning.
inline std::vector<Walk> all_walks(const GameInstance& g, Time budget)
{
    std::vector<Walk> out;
    Walk walk;
    auto f = [&](auto&& self, NodeId v, Time left) -> void {
        for (const Edge& e : g.edges) {
            if (e.tail != v || e.transit > left) continue;
            walk.push_back(e.id);
            if (e.head == g.sink) out.push_back(walk);
            self(self, e.head, left - e.transit);
            walk.pop_back();
        }
    };
    f(f, g.source, budget);
    std::sort(out.begin(), out.end());
    return out;
}

// ----------------------------------------------------------- simulation

struct RefResult {
    std::vector<Time> arrivals;
    std::vector<std::vector<Time>> entries;
};

/// Steps time one unit at a time. Within a step a node is handled once all
/// tails of its zero-transit in-edges are handled, picking the highest node
/// id among the ready ones and out-edges in descending id, which must not
/// matter.
inline RefResult reference_simulate(const GameInstance& g, const StrategyProfile& profile)
{
    const int n = static_cast<int>(g.nodes.size());
    const int k = static_cast<int>(profile.size());
    Game game(g);  // only for priority ranks
    struct P {
        std::size_t pos = 0;
        NodeId at;
        EdgeId cur = kNoEdge;
        Time entered = 0;
        Time ready = 0;
        bool done = false;
    };
    std::vector<P> ps(at(k), P{0, g.source});
    RefResult r;
    r.arrivals.assign(at(k), -1);
    r.entries.assign(at(k), {});
    int remaining = k;
    Time horizon = 1;
    for (const Walk& w : profile)
        for (EdgeId e : w) horizon += g.edges[at(e)].transit + 1;
    for (Time T = 0; remaining > 0; ++T) {
        if (T > horizon) throw std::runtime_error("reference simulation did not terminate");
        std::vector<char> handled(at(n), 0);
        for (int round = 0; round < n; ++round) {
            NodeId pick = -1;
            for (NodeId v = n - 1; v >= 0 && pick < 0; --v) {
                if (handled[at(v)]) continue;
                bool ready = true;
                for (const Edge& e : g.edges)
                    if (e.head == v && e.transit == 0 && !handled[at(e.tail)]) ready = false;
                if (ready) pick = v;
            }
            handled[at(pick)] = 1;
            for (int ei = static_cast<int>(g.edges.size()) - 1; ei >= 0; --ei) {
                const Edge& e = g.edges[at(ei)];
                if (e.tail != pick) continue;
                std::vector<std::tuple<int, Time, int>> cand;
                for (int p = 0; p < k; ++p) {
                    const P& q = ps[at(p)];
                    if (q.done || q.at != pick || q.ready > T || profile[at(p)][q.pos] != e.id) continue;
                    cand.emplace_back(q.cur == kNoEdge ? -1 : game.rank(e.id, q.cur), q.entered, p);
                }
                std::sort(cand.begin(), cand.end());
                for (std::size_t c = 0; c < cand.size() && c < static_cast<std::size_t>(e.capacity); ++c) {
                    P& q = ps[at(std::get<2>(cand[c]))];
                    q.cur = e.id;
                    q.entered = T;
                    q.ready = T + e.transit;
                    q.at = e.head;
                    r.entries[at(std::get<2>(cand[c]))].push_back(T);
                    if (++q.pos == profile[at(std::get<2>(cand[c]))].size()) {
                        q.done = true;
                        r.arrivals[at(std::get<2>(cand[c]))] = q.ready;
                        --remaining;
                    }
                }
            }
        }
    }
    return r;
}

/// Violated trace invariants, empty when all hold: event consistency,
/// capacity, priority soundness (no better-keyed candidate denied),
/// work conservation (denial only at full capacity) and FIFO per edge pair.
inline std::vector<std::string> trace_violations(const Game& game, const StrategyProfile& profile, const SimulationTrace& trace)
{
    std::vector<std::string> bad;
    const int k = static_cast<int>(profile.size());
    auto say = [&](const std::string& s) { bad.push_back(s); };
    // (edge, time) -> admitted players
    std::map<std::pair<EdgeId, Time>, std::vector<int>> admitted;
    for (int p = 0; p < k; ++p) {
        const auto& ev = trace.events[at(p)];
        if (ev.size() != profile[at(p)].size()) {
            say("player " + std::to_string(p) + " has wrong event count");
            continue;
        }
        for (std::size_t j = 0; j < ev.size(); ++j) {
            if (ev[j].edge != profile[at(p)][j]) say("event edge differs from walk");
            if (ev[j].eligible != ev[j].entry + game.edge(ev[j].edge).transit) say("eligible != entry + transit");
            if (ev[j].exit < ev[j].eligible) say("exit before eligible");
            if (j + 1 < ev.size() && ev[j].exit != ev[j + 1].entry) say("exit differs from next entry");
            if (j > 0 && ev[j].entry < ev[j - 1].eligible) say("entered before eligible");
            admitted[{ev[j].edge, ev[j].entry}].push_back(p);
        }
        if (!ev.empty() && trace.arrivals[at(p)] != ev.back().eligible) say("arrival differs from last eligible time");
        if (!ev.empty() && ev.back().exit != ev.back().eligible) say("last exit differs from arrival");
    }
    for (const auto& [key, players] : admitted)
        if (static_cast<int>(players.size()) > game.edge(key.first).capacity) say("capacity exceeded");

    // Candidates of edge e at time T: players whose next edge is e and who
    // were ready at or before T without having entered e before T.
    using Key = std::tuple<int, Time, int>;
    for (int p = 0; p < k; ++p) {
        const auto& ev = trace.events[at(p)];
        for (std::size_t j = 0; j < ev.size(); ++j) {
            EdgeId e = ev[j].edge;
            Time ready = j == 0 ? 0 : ev[j - 1].eligible;
            for (Time T = ready; T < ev[j].entry; ++T) {
                // p was denied at T; the admitted ones must beat it, and e must be full.
                Key mine{j == 0 ? -1 : game.rank(e, ev[j - 1].edge), j == 0 ? 0 : ev[j - 1].entry, p};
                auto it = admitted.find({e, T});
                int count = it == admitted.end() ? 0 : static_cast<int>(it->second.size());
                if (count < game.edge(e).capacity) say("denied with free capacity");
                if (it == admitted.end()) continue;
                for (int q : it->second) {
                    const auto& evq = trace.events[at(q)];
                    std::size_t jq = 0;
                    while (evq[jq].edge != e || evq[jq].entry != T) ++jq;
                    Key theirs{jq == 0 ? -1 : game.rank(e, evq[jq - 1].edge), jq == 0 ? 0 : evq[jq - 1].entry, q};
                    if (theirs > mine) say("priority violated");
                }
            }
        }
    }
    // FIFO: same edge pair (e', e), earlier entry on e' never leaves later.
    for (int p = 0; p < k; ++p) {
        for (int q = 0; q < k; ++q) {
            const auto& a = trace.events[at(p)];
            const auto& b = trace.events[at(q)];
            for (std::size_t i = 0; i + 1 < a.size(); ++i)
                for (std::size_t j = 0; j + 1 < b.size(); ++j)
                    if (a[i].edge == b[j].edge && a[i + 1].edge == b[j + 1].edge && a[i].entry < b[j].entry &&
                        a[i].exit > b[j].exit)
                        say("FIFO violated");
        }
    }
    return bad;
}

// ------------------------------------------------------------ responses

/// Earliest arrival of `player` over all walks of transit at most `budget`,
/// lexicographically smallest walk on ties.
inline std::pair<Walk, Time> brute_best_response(const Game& game, StrategyProfile profile, int player, Time budget)
{
    Walk best;
    Time arrival = std::numeric_limits<Time>::max();
    for (const Walk& w : all_walks(game.instance(), budget)) {
        profile[at(player)] = w;
        Time a = simulate(game, profile).arrivals[at(player)];
        if (a < arrival) {
            arrival = a;
            best = w;
        }
    }
    return {best, arrival};
}

inline bool brute_is_pne(const Game& game, const StrategyProfile& profile)
{
    auto arrivals = simulate(game, profile).arrivals;
    for (int i = 0; i < static_cast<int>(profile.size()); ++i) {
        if (arrivals[at(i)] <= 0) continue;
        if (brute_best_response(game, profile, i, arrivals[at(i)] - 1).second < arrivals[at(i)]) return false;
    }
    return true;
}

/// Calls f(profile) for every profile over `universe`^k.
template <typename F>
void for_each_profile(const std::vector<Walk>& universe, int k, F&& f)
{
    if (universe.empty()) return;
    std::vector<std::size_t> c(at(k), 0);
    StrategyProfile profile(at(k));
    for (;;) {
        for (int i = 0; i < k; ++i) profile[at(i)] = universe[c[at(i)]];
        f(profile);
        int i = 0;
        while (i < k && ++c[at(i)] == universe.size()) c[at(i++)] = 0;
        if (i == k) return;
    }
}

// ------------------------------------------------------------- flows

/// Maximum number of players that can reach the sink by time T in the
/// time-expanded network (storage allowed everywhere), by Edmonds-Karp.
inline std::int64_t time_expanded_max_flow(const GameInstance& g, Time T)
{
    const int n = static_cast<int>(g.nodes.size());
    const int layers = static_cast<int>(T) + 1;
    const int N = n * layers + 2;
    const int source = N - 2;
    const int sink = N - 1;
    const std::int64_t inf = 1'000'000;
    struct A {
        int to;
        std::int64_t cap;
        int rev;
    };
    std::vector<std::vector<A>> adj(at(N));
    auto add = [&](int a, int b, std::int64_t c) {
        adj[at(a)].push_back({b, c, static_cast<int>(adj[at(b)].size())});
        adj[at(b)].push_back({a, 0, static_cast<int>(adj[at(a)].size()) - 1});
    };
    auto id = [&](NodeId v, int theta) { return theta * n + v; };
    add(source, id(g.source, 0), inf);
    for (int th = 0; th < layers; ++th) {
        for (NodeId v = 0; v < n; ++v)
            if (th + 1 < layers) add(id(v, th), id(v, th + 1), inf);
        for (const Edge& e : g.edges)
            if (th + e.transit < layers) add(id(e.tail, th), id(e.head, th + static_cast<int>(e.transit)), e.capacity);
    }
    add(id(g.sink, layers - 1), sink, inf);
    std::int64_t flow = 0;
    for (;;) {
        std::vector<std::pair<int, int>> parent(at(N), {-1, -1});
        std::deque<int> q{source};
        parent[at(source)] = {source, -1};
        while (!q.empty() && parent[at(sink)].first < 0) {
            int x = q.front();
            q.pop_front();
            for (int i = 0; i < static_cast<int>(adj[at(x)].size()); ++i) {
                const A& a = adj[at(x)][at(i)];
                if (a.cap > 0 && parent[at(a.to)].first < 0) {
                    parent[at(a.to)] = {x, i};
                    q.push_back(a.to);
                }
            }
        }
        if (parent[at(sink)].first < 0) return flow;
        std::int64_t push = inf;
        for (int y = sink; y != source; y = parent[at(y)].first)
            push = std::min(push, adj[at(parent[at(y)].first)][at(parent[at(y)].second)].cap);
        for (int y = sink; y != source; y = parent[at(y)].first) {
            A& a = adj[at(parent[at(y)].first)][at(parent[at(y)].second)];
            a.cap -= push;
            adj[at(y)][at(a.rev)].cap += push;
        }
        flow += push;
    }
}

// ------------------------------------------------------ graph classes

/// Two-terminal series-parallel check by repeated series and parallel
/// reductions of the underlying multigraph.
inline bool is_two_terminal_series_parallel(const GameInstance& g)
{
    std::multiset<std::pair<NodeId, NodeId>> edges;
    for (const Edge& e : g.edges) edges.insert({e.tail, e.head});
    bool changed = true;
    while (changed) {
        changed = false;
        // parallel: collapse duplicates
        std::multiset<std::pair<NodeId, NodeId>> unique;
        for (const auto& e : edges)
            if (!unique.count(e)) unique.insert(e);
        if (unique.size() != edges.size()) {
            edges = unique;
            changed = true;
        }
        // series: inner node with exactly one in-edge and one out-edge
        for (NodeId v = 0; v < static_cast<NodeId>(g.nodes.size()) && !changed; ++v) {
            if (v == g.source || v == g.sink) continue;
            std::vector<std::pair<NodeId, NodeId>> in, out;
            for (const auto& e : edges) {
                if (e.second == v) in.push_back(e);
                if (e.first == v) out.push_back(e);
            }
            if (in.size() == 1 && out.size() == 1) {
                edges.erase(edges.find(in[0]));
                edges.erase(edges.find(out[0]));
                edges.insert({in[0].first, out[0].second});
                changed = true;
            }
        }
    }
    return edges.size() == 1 && *edges.begin() == std::make_pair(g.source, g.sink);
}

}  // namespace edgeprio::oracle
