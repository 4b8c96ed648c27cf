// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0

#include "edgeprio/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace edgeprio {

namespace {

// Endpoints are written as node names; integer indices are accepted on input.
NodeId node_ref(const Json& value, const GameInstance& instance, const char* what)
{
    if (value.is_number_integer()) return value.get<NodeId>();
    if (value.is_string()) {
        try {
            return instance.node(value.get<std::string>());
        } catch (const std::out_of_range&) {
            throw MalformedInput(std::string(what) + " refers to unknown node '" + value.get<std::string>() + "'");
        }
    }
    throw MalformedInput(std::string(what) + " must be a node name or index");
}

const Json& field(const Json& obj, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end()) throw MalformedInput(std::string("missing key '") + key + "'");
    return *it;
}

template <typename T>
T as(const Json& value, const char* what)
{
    try {
        return value.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw MalformedInput(std::string("wrong type for ") + what);
    }
}

}  // namespace

Json instance_to_json(const GameInstance& g)
{
    Json j;
    j["nodes"] = g.nodes;
    Json edges = Json::array();
    auto name = [&](NodeId v) -> Json {
        if (v >= 0 && v < static_cast<NodeId>(g.nodes.size())) return g.nodes[static_cast<std::size_t>(v)];
        return v;
    };
    for (const Edge& e : g.edges) {
        edges.push_back(
            {{"id", e.id}, {"tail", name(e.tail)}, {"head", name(e.head)}, {"capacity", e.capacity}, {"transit", e.transit}});
    }
    j["edges"] = std::move(edges);
    j["source"] = name(g.source);
    j["sink"] = name(g.sink);
    j["players"] = g.players;
    if (g.priority.kind == PriorityScheme::Kind::Global) {
        j["priority"] = {{"kind", "global"}, {"order", g.priority.order}};
    } else {
        Json lists = Json::object();
        for (std::size_t e = 0; e < g.priority.lists.size(); ++e) lists[std::to_string(e)] = g.priority.lists[e];
        j["priority"] = {{"kind", "local"}, {"lists", std::move(lists)}};
    }
    if (!g.metadata.family.empty() || !g.metadata.edge_labels.empty() || !g.metadata.notes.empty()) {
        j["metadata"] = {{"family", g.metadata.family}, {"edge_labels", g.metadata.edge_labels}, {"notes", g.metadata.notes}};
    }
    return j;
}

GameInstance instance_from_json(const Json& j)
{
    if (!j.is_object()) throw MalformedInput("instance must be a JSON object");
    GameInstance g;
    g.nodes = as<std::vector<std::string>>(field(j, "nodes"), "nodes");
    const Json& edges = field(j, "edges");
    if (!edges.is_array()) throw MalformedInput("edges must be an array");
    for (const Json& ej : edges) {
        if (!ej.is_object()) throw MalformedInput("edge entries must be objects");
        Edge e;
        e.id = as<EdgeId>(field(ej, "id"), "edge id");
        e.tail = node_ref(field(ej, "tail"), g, "edge tail");
        e.head = node_ref(field(ej, "head"), g, "edge head");
        e.capacity = ej.contains("capacity") ? as<int>(ej["capacity"], "capacity") : 1;
        e.transit = ej.contains("transit") ? as<Time>(ej["transit"], "transit") : 0;
        g.edges.push_back(e);
    }
    g.source = node_ref(field(j, "source"), g, "source");
    g.sink = node_ref(field(j, "sink"), g, "sink");
    g.players = j.contains("players") ? as<int>(j["players"], "players") : 1;

    if (j.contains("priority")) {
        const Json& pj = j["priority"];
        std::string kind = as<std::string>(field(pj, "kind"), "priority kind");
        if (kind == "global") {
            g.priority = PriorityScheme::global(as<std::vector<EdgeId>>(field(pj, "order"), "priority order"));
        } else if (kind == "local") {
            const Json& lj = field(pj, "lists");
            if (!lj.is_object()) throw MalformedInput("local priority lists must be an object keyed by edge id");
            std::vector<std::vector<EdgeId>> lists(g.edges.size());
            for (const auto& [key, value] : lj.items()) {
                std::size_t pos = 0;
                int e = -1;
                try {
                    e = std::stoi(key, &pos);
                } catch (const std::exception&) {
                    pos = 0;
                }
                if (pos != key.size() || e < 0 || e >= static_cast<int>(lists.size()))
                    throw MalformedInput("priority list key '" + key + "' is not an edge id");
                lists[static_cast<std::size_t>(e)] = as<std::vector<EdgeId>>(value, "priority list");
            }
            g.priority = PriorityScheme::local(std::move(lists));
        } else {
            throw MalformedInput("priority kind must be 'global' or 'local'");
        }
    } else {
        std::vector<EdgeId> order(g.edges.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<EdgeId>(i);
        g.priority = PriorityScheme::global(std::move(order));
    }

    if (j.contains("metadata")) {
        const Json& mj = j["metadata"];
        if (mj.contains("family")) g.metadata.family = as<std::string>(mj["family"], "metadata family");
        if (mj.contains("edge_labels")) g.metadata.edge_labels = as<std::vector<std::string>>(mj["edge_labels"], "edge labels");
        if (mj.contains("notes")) g.metadata.notes = as<std::vector<std::string>>(mj["notes"], "metadata notes");
    }
    return g;
}

Json profile_to_json(const StrategyProfile& profile)
{
    Json walks = Json::array();
    for (const auto& walk : profile) walks.push_back(walk);
    return {{"walks", std::move(walks)}};
}

StrategyProfile profile_from_json(const Json& j)
{
    if (!j.is_object()) throw MalformedInput("profile must be a JSON object");
    return as<StrategyProfile>(field(j, "walks"), "walks");
}

Json parse_json(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedInput(std::string("JSON syntax error: ") + e.what());
    }
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json(buffer.str());
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

std::uint64_t instance_hash(const GameInstance& instance)
{
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : instance_to_json(instance).dump()) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string hash_hex(std::uint64_t hash)
{
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

}  // namespace edgeprio
