// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Domain types for routing games with edge priorities: the network, the
// priority scheme, strategies (walks) and the validated, indexed view that
// every algorithm in this library runs on.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace edgeprio {

using NodeId = int;
using EdgeId = int;
using Time = std::int64_t;

inline constexpr Time kInfinity = std::numeric_limits<Time>::max() / 4;
inline constexpr EdgeId kNoEdge = -1;

struct Edge {
    EdgeId id = 0;
    NodeId tail = 0;
    NodeId head = 0;
    int capacity = 1;  // players admitted per time step
    Time transit = 0;

    bool operator==(const Edge&) const = default;
};

/**
 * Priority of incoming edges when entering an edge.
 *
 * A global scheme is a total order on all edges (earlier = higher priority);
 * a local scheme gives for every edge e=(v,w) a permutation of the incoming
 * edges of v, highest priority first.
 */
struct PriorityScheme {
    enum class Kind { Global, Local };

    Kind kind = Kind::Global;
    std::vector<EdgeId> order;               // Global
    std::vector<std::vector<EdgeId>> lists;  // Local, indexed by edge id

    static PriorityScheme global(std::vector<EdgeId> order);
    static PriorityScheme local(std::vector<std::vector<EdgeId>> lists);

    bool operator==(const PriorityScheme&) const = default;
};

/// Labels attached by generators; edge_labels name edges for lookups.
struct InstanceMetadata {
    std::string family;
    std::vector<std::string> edge_labels;  // empty or one per edge
    std::vector<std::string> notes;

    bool operator==(const InstanceMetadata&) const = default;
};

struct GameInstance {
    std::vector<std::string> nodes;
    std::vector<Edge> edges;  // edges[i].id == i
    NodeId source = 0;
    NodeId sink = 0;
    PriorityScheme priority;
    int players = 1;
    InstanceMetadata metadata;

    /// Index of the node called `name`; throws std::out_of_range.
    NodeId node(std::string_view name) const;
    /// Id of the edge labelled `label` in the metadata; throws std::out_of_range.
    EdgeId labelled_edge(std::string_view label) const;

    bool operator==(const GameInstance&) const = default;
};

/// A strategy: edge ids from the source to the sink, repeats allowed.
using Walk = std::vector<EdgeId>;
/// One walk per player; index 0 is player 1.
using StrategyProfile = std::vector<Walk>;

enum class ViolationKind {
    NoNodes,
    DuplicateNode,
    BadEndpoint,
    BadEdgeId,
    BadCapacity,
    BadTransit,
    BadPlayers,
    SourceEqualsSink,
    SourceHasIncoming,
    BadPriority,
    ZeroCostCycle,
    SinkUnreachable,
    ZeroDistance,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool has(ViolationKind kind) const;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInstance : public Error {
public:
    explicit InvalidInstance(ValidationReport report);
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

class NoPathError : public Error {
public:
    NoPathError() : Error("no s-t path") {}
};

class InvalidWalk : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class MalformedInput : public Error {
public:
    using Error::Error;
};

/// Lists every violated structural invariant; an empty report means valid.
ValidationReport validate_instance(const GameInstance& instance);

/// Congestion-free shortest transit distance from the source to every node
/// (nullopt when unreachable). Throws NoPathError if the sink is unreachable.
std::vector<std::optional<Time>> transit_shortest_paths(const GameInstance& instance);

/// Converts a global scheme into the local lists it induces. Local schemes
/// are returned unchanged.
GameInstance globalize(const GameInstance& instance);

/**
 * Validated and indexed view of a GameInstance.
 *
 * Adjacency lists are sorted by ascending edge id, and priority lookups are
 * O(1). Construction throws InvalidInstance when validate_instance reports
 * anything.
 */
class Game {
public:
    explicit Game(GameInstance instance);

    const GameInstance& instance() const { return instance_; }
    int node_count() const { return static_cast<int>(instance_.nodes.size()); }
    int edge_count() const { return static_cast<int>(instance_.edges.size()); }
    int players() const { return instance_.players; }
    NodeId source() const { return instance_.source; }
    NodeId sink() const { return instance_.sink; }
    const Edge& edge(EdgeId e) const { return instance_.edges[static_cast<std::size_t>(e)]; }

    std::span<const EdgeId> in_edges(NodeId v) const { return in_[static_cast<std::size_t>(v)]; }
    std::span<const EdgeId> out_edges(NodeId v) const { return out_[static_cast<std::size_t>(v)]; }

    /// Position of `incoming` in the priority list of `outgoing` (0 = first).
    int rank(EdgeId outgoing, EdgeId incoming) const
    {
        return rank_[static_cast<std::size_t>(outgoing)][static_cast<std::size_t>(in_position_[static_cast<std::size_t>(incoming)])];
    }
    /// Priority list of `outgoing`, highest priority first.
    std::span<const EdgeId> priority_list(EdgeId outgoing) const { return lists_[static_cast<std::size_t>(outgoing)]; }

    /// Nodes in a topological order of the zero-transit subgraph, ties by id.
    std::span<const NodeId> zero_transit_order() const { return topo_; }

    /// Shortest s-t transit distance.
    Time shortest_distance() const { return dist_to_sink_[static_cast<std::size_t>(source())]; }
    Time distance_from_source(NodeId v) const { return dist_from_source_[static_cast<std::size_t>(v)]; }
    /// kInfinity when the sink cannot be reached from v.
    Time distance_to_sink(NodeId v) const { return dist_to_sink_[static_cast<std::size_t>(v)]; }

    Game with_players(int players) const;
    Game with_priority(PriorityScheme priority) const;

private:
    GameInstance instance_;
    std::vector<std::vector<EdgeId>> in_;
    std::vector<std::vector<EdgeId>> out_;
    std::vector<std::vector<EdgeId>> lists_;
    std::vector<int> in_position_;
    std::vector<std::vector<int>> rank_;
    std::vector<NodeId> topo_;
    std::vector<Time> dist_from_source_;
    std::vector<Time> dist_to_sink_;
};

/// Throws InvalidWalk unless `walk` is a head-to-tail connected s-t walk.
void validate_walk(const Game& game, std::span<const EdgeId> walk);
/// Throws InvalidWalk unless the profile has one valid walk per player.
void validate_profile(const Game& game, const StrategyProfile& profile);

Time walk_transit(const Game& game, std::span<const EdgeId> walk);
/// Number of times the walk enters node v.
int node_visits(const Game& game, std::span<const EdgeId> walk, NodeId v);

}  // namespace edgeprio
