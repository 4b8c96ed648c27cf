// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0

#include "edgeprio/simulator.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace edgeprio {

namespace {

auto admission_key(const Game& game, EdgeId e, const Candidate& c)
{
    int rank = c.current == kNoEdge ? -1 : game.rank(e, c.current);
    return std::make_tuple(rank, c.entered, c.player);
}

void sort_candidates(const Game& game, EdgeId e, std::vector<Candidate>& candidates)
{
    std::sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
        return admission_key(game, e, a) < admission_key(game, e, b);
    });
}

}  // namespace

std::vector<Candidate> admission_order(const Game& game, EdgeId e, std::vector<Candidate> candidates, int already)
{
    sort_candidates(game, e, candidates);
    auto free = static_cast<std::size_t>(std::max(0, game.edge(e).capacity - already));
    if (candidates.size() > free) candidates.resize(free);
    return candidates;
}

Simulation::Simulation(const Game& game, std::vector<Plan> plans, bool record, Time adaptive_horizon)
    : game_(&game), record_(record), remaining_(static_cast<int>(plans.size()))
{
    agents_.resize(plans.size());
    limit_ = 1;
    int adaptive = 0;
    for (std::size_t p = 0; p < plans.size(); ++p) {
        Agent& a = agents_[p];
        a.plan = plans[p];
        a.location = game.source();
        if (a.plan) {
            if (a.plan->empty()) throw InvalidWalk("walk is empty");
            a.next = a.plan->front();
            limit_ += walk_transit(game, *a.plan) + static_cast<Time>(a.plan->size());
        } else {
            ++adaptive;
        }
    }
    limit_ += adaptive * ((adaptive_horizon + 1) * (game.node_count() + 1) + adaptive_horizon);
    if (record_) events_.resize(plans.size());
}

NodeId Simulation::pending_node() const
{
    return pending_ < 0 ? -1 : agents_[idx(pending_)].location;
}

void Simulation::admit(int player, EdgeId e)
{
    Agent& a = agents_[idx(player)];
    const Edge& edge = game_->edge(e);
    if (record_) {
        auto& log = events_[idx(player)];
        if (!log.empty()) log.back().exit = now_;
        log.push_back({e, now_, now_ + edge.transit, 0});
    }
    a.current = e;
    a.entered = now_;
    a.eligible = now_ + edge.transit;
    a.location = edge.head;
    a.transit += edge.transit;
    if (a.plan) {
        ++a.cursor;
        if (a.cursor == a.plan->size()) {
            a.arrived = true;
            a.arrival = a.eligible;
            a.next = kNoEdge;
            --remaining_;
            if (record_) events_[idx(player)].back().exit = a.arrival;
        } else {
            a.next = (*a.plan)[a.cursor];
        }
    } else {
        a.taken.push_back(e);
        a.next = kNoEdge;
    }
}

void Simulation::decide(std::optional<EdgeId> next)
{
    if (pending_ < 0) throw Error("no decision is pending");
    Agent& a = agents_[idx(pending_)];
    if (next) {
        if (*next < 0 || *next >= game_->edge_count() || game_->edge(*next).tail != a.location)
            throw InvalidWalk("edge " + std::to_string(*next) + " does not leave the current node");
        a.next = *next;
    } else {
        if (a.location != game_->sink() || a.current == kNoEdge) throw InvalidWalk("a walk can only end at the sink");
        a.arrived = true;
        a.arrival = a.eligible;
        --remaining_;
        if (record_) events_[idx(pending_)].back().exit = a.arrival;
    }
    pending_ = -1;
}

Simulation::Status Simulation::run()
{
    if (pending_ >= 0) return Status::NeedDecision;
    const auto topo = game_->zero_transit_order();
    while (remaining_ > 0) {
        for (; topo_pos_ < topo.size(); ++topo_pos_) {
            const NodeId v = topo[topo_pos_];
            scratch_.clear();
            for (int p = 0; p < players(); ++p) {
                const Agent& a = agents_[idx(p)];
                if (!a.arrived && a.location == v && a.eligible <= now_) scratch_.push_back(p);
            }
            if (scratch_.empty()) continue;
            for (int p : scratch_) {
                if (agents_[idx(p)].next == kNoEdge) {
                    pending_ = p;
                    return Status::NeedDecision;
                }
            }
            for (EdgeId e : game_->out_edges(v)) {
                candidates_.clear();
                for (int p : scratch_) {
                    const Agent& a = agents_[idx(p)];
                    if (!a.arrived && a.location == v && a.eligible <= now_ && a.next == e)
                        candidates_.push_back({p, a.current, a.entered});
                }
                if (candidates_.empty()) continue;
                sort_candidates(*game_, e, candidates_);
                auto admitted = std::min(candidates_.size(), static_cast<std::size_t>(game_->edge(e).capacity));
                for (std::size_t c = 0; c < admitted; ++c) admit(candidates_[c].player, e);
            }
        }
        topo_pos_ = 0;
        if (remaining_ == 0) break;

        bool waiting = false;
        Time earliest = kInfinity;
        for (const Agent& a : agents_) {
            if (a.arrived) continue;
            if (a.eligible <= now_)
                waiting = true;
            else
                earliest = std::min(earliest, a.eligible);
        }
        now_ = waiting ? now_ + 1 : earliest;
        if (now_ > limit_) throw Error("livelock: simulation exceeded its time horizon");
    }
    return Status::Finished;
}

std::vector<Time> Simulation::arrivals() const
{
    std::vector<Time> result;
    result.reserve(agents_.size());
    for (const Agent& a : agents_) result.push_back(a.arrival);
    return result;
}

SimulationTrace Simulation::trace() const
{
    SimulationTrace t;
    t.events = events_;
    t.arrivals = arrivals();
    t.total = total_cost(t.arrivals);
    return t;
}

SimulationTrace simulate(const Game& game, const StrategyProfile& profile)
{
    validate_profile(game, profile);
    std::vector<Simulation::Plan> plans(profile.begin(), profile.end());
    Simulation sim(game, std::move(plans), true);
    sim.run();
    return sim.trace();
}

std::vector<Time> simulate_arrivals(const Game& game, std::span<const Walk> profile)
{
    std::vector<Simulation::Plan> plans(profile.begin(), profile.end());
    Simulation sim(game, std::move(plans));
    if (sim.run() != Simulation::Status::Finished) throw Error("fixed walks cannot request decisions");
    return sim.arrivals();
}

Time total_cost(std::span<const Time> arrivals)
{
    return std::accumulate(arrivals.begin(), arrivals.end(), Time{0});
}

}  // namespace edgeprio
