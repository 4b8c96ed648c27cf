// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0

#include "edgeprio/cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <sstream>

#include "edgeprio/generators.hpp"
#include "edgeprio/pathfinder.hpp"

namespace edgeprio {

namespace {

std::string list_text(const std::vector<EdgeId>& ids)
{
    std::string text = "[";
    for (std::size_t i = 0; i < ids.size(); ++i) text += (i ? "," : "") + std::to_string(ids[i]);
    return text + "]";
}

Json profile_cost_json(const ProfileCost& pc)
{
    return {{"cost", pc.cost}, {"arrivals", pc.arrivals}, {"walks", profile_to_json(pc.profile)["walks"]}};
}

Json ratio_json(const Ratio& r)
{
    return {{"num", r.num}, {"den", r.den}, {"text", r.to_string()}, {"value", r.value()}};
}

Json stamped(const GameInstance& instance, Json body)
{
    Json j;
    j["tool_version"] = kToolVersion;
    j["instance_hash"] = hash_hex(instance_hash(instance));
    for (auto& [key, value] : body.items()) j[key] = value;
    return j;
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    std::string output;

    void emit(const Json& j) const
    {
        if (!output.empty()) write_text_file(output, j.dump(2) + "\n");
    }
};

Game load_game(const std::string& path)
{
    return Game(instance_from_json(read_json_file(path)));
}

int cmd_validate(const Context& ctx, const std::string& input)
{
    GameInstance instance = instance_from_json(read_json_file(input));
    ValidationReport report = validate_instance(instance);
    if (report.ok()) {
        ctx.out << "valid\n";
        return kExitOk;
    }
    for (const Violation& v : report.violations) ctx.out << to_string(v.kind) << ": " << v.message << "\n";
    return kExitInvalid;
}

int cmd_simulate(const Context& ctx, const std::string& input, const std::string& profile_path)
{
    Game game = load_game(input);
    StrategyProfile profile = profile_from_json(read_json_file(profile_path));
    SimulationTrace trace = simulate(game, profile);
    for (std::size_t i = 0; i < trace.arrivals.size(); ++i)
        ctx.out << "player " << i + 1 << ": arrival=" << trace.arrivals[i] << "\n";
    ctx.out << "total cost: " << trace.total << "\n";
    ctx.emit(stamped(game.instance(), trace_to_json(trace)));
    return kExitOk;
}

int cmd_solve(const Context& ctx, const std::string& input, const std::string& policy_text)
{
    Game game = load_game(input);
    SinkEdgePolicy policy = SinkEdgePolicy::parse(policy_text);
    EquilibriumResult eq = compute_equilibrium(game, policy);
    for (std::size_t i = 0; i < eq.profile.size(); ++i)
        ctx.out << "player " << i + 1 << ": arrival=" << eq.trace.arrivals[i] << " walk=" << list_text(eq.profile[i]) << "\n";
    ctx.out << "total cost: " << eq.trace.total << "\n";
    Json body = profile_to_json(eq.profile);
    body["sink_policy"] = policy.to_string();
    body["trace"] = trace_to_json(eq.trace);
    ctx.emit(stamped(game.instance(), body));
    return kExitOk;
}

int cmd_analyze(const Context& ctx, const std::string& input, SearchBudget budget)
{
    Game game = load_game(input);
    EquilibriumReport report = price_metrics(game, budget);
    auto row = [&](const std::string& label, const std::string& value) {
        ctx.out << std::left << std::setw(22) << label << value << "\n";
    };
    row("horizon", std::to_string(report.horizon));
    row("social optimum", std::to_string(report.optimum.cost));
    row("equilibria", std::to_string(report.pne_count));
    row("best PNE", std::to_string(report.best_pne.cost));
    row("worst PNE", std::to_string(report.worst_pne.cost));
    row("best mistrustful PNE", report.best_mistrustful ? std::to_string(report.best_mistrustful->cost) : "undefined");
    row("PoA", report.poa.to_string());
    row("PoS", report.pos.to_string());
    row("PoM", report.pom ? report.pom->to_string() : "undefined");
    row("PoA <= (k+1)/2", report.poa_bound_holds ? "yes" : "NO");
    ctx.emit(stamped(game.instance(), report_to_json(report)));
    return kExitOk;
}

int cmd_eaf(const Context& ctx, const std::string& input, int players)
{
    Game game = load_game(input);
    EafResult eaf = earliest_arrival_flow(game, players);
    for (std::size_t i = 0; i < eaf.paths.size(); ++i) {
        ctx.out << "path " << i + 1 << ": length=" << eaf.paths[i].length << " amount=" << eaf.paths[i].amount << " arcs=";
        for (const ResidualArc& a : eaf.paths[i].arcs) ctx.out << (a.forward ? "+" : "-") << a.edge << " ";
        ctx.out << "\n";
    }
    ctx.out << "arrivals:";
    for (Time t : eaf.arrivals) ctx.out << " " << t;
    ctx.out << "\ntotal cost: " << eaf.total << "\n";
    ctx.emit(stamped(game.instance(), eaf_to_json(eaf)));
    return kExitOk;
}

int cmd_priolist(const Context& ctx, const std::string& input, int players)
{
    Game game = load_game(input);
    PriorityListDraft draft = construct_priority_list(game, players);
    if (draft.feasible()) {
        ctx.out << "feasible: " << list_text(draft.list) << "\n";
    } else {
        ctx.out << "infeasible: edge " << draft.conflict << " would be placed twice (before backward edge "
                << draft.conflict_backward << ")\n";
    }
    ctx.emit(stamped(game.instance(), draft_to_json(draft)));
    return kExitOk;
}

int cmd_generate(const Context& ctx, const FamilySpec& spec)
{
    GameInstance instance = generate(spec);
    std::string text = instance_to_json(instance).dump(2) + "\n";
    if (ctx.output.empty())
        ctx.out << text;
    else
        write_text_file(ctx.output, text);
    return kExitOk;
}

}  // namespace

Json trace_to_json(const SimulationTrace& trace)
{
    Json players = Json::array();
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
        Json events = Json::array();
        for (const EdgeEvent& e : trace.events[i])
            events.push_back({{"edge", e.edge}, {"entry", e.entry}, {"eligible", e.eligible}, {"exit", e.exit}});
        players.push_back({{"player", i + 1}, {"events", std::move(events)}});
    }
    return {{"arrivals", trace.arrivals}, {"total", trace.total}, {"players", std::move(players)}};
}

Json report_to_json(const EquilibriumReport& r)
{
    Json j;
    j["horizon"] = r.horizon;
    j["optimum"] = profile_cost_json(r.optimum);
    j["pne_count"] = r.pne_count;
    j["best_pne"] = profile_cost_json(r.best_pne);
    j["worst_pne"] = profile_cost_json(r.worst_pne);
    j["best_mistrustful_pne"] = r.best_mistrustful ? profile_cost_json(*r.best_mistrustful) : Json(nullptr);
    j["poa"] = ratio_json(r.poa);
    j["pos"] = ratio_json(r.pos);
    j["pom"] = r.pom ? ratio_json(*r.pom) : Json(nullptr);
    j["poa_bound"] = ratio_json(r.poa_bound);
    j["poa_bound_holds"] = r.poa_bound_holds;
    return j;
}

Json eaf_to_json(const EafResult& eaf)
{
    Json paths = Json::array();
    for (const AugmentingPath& p : eaf.paths) {
        Json arcs = Json::array();
        for (const ResidualArc& a : p.arcs) arcs.push_back({{"edge", a.edge}, {"forward", a.forward}});
        paths.push_back({{"length", p.length}, {"amount", p.amount}, {"arcs", std::move(arcs)}});
    }
    Json pattern = Json::array();
    if (!eaf.arrivals.empty()) {
        for (Time t = eaf.arrivals.front(); t <= eaf.arrivals.back(); ++t) pattern.push_back({{"time", t}, {"arrived", eaf.cumulative(t)}});
    }
    Json actual = Json::array();
    for (const Walk& w : eaf.actual_paths()) actual.push_back(w);
    return {{"paths", std::move(paths)},
            {"arrivals", eaf.arrivals},
            {"total", eaf.total},
            {"pattern", std::move(pattern)},
            {"actual_paths", std::move(actual)}};
}

Json draft_to_json(const PriorityListDraft& d)
{
    Json j;
    j["status"] = d.feasible() ? "feasible" : "infeasible";
    j["list"] = d.list;
    if (!d.feasible()) {
        j["conflict"] = d.conflict;
        j["conflict_backward"] = d.conflict_backward;
    }
    j["appended_for_insertion"] = d.appended_for_insertion;
    return j;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Routing games over time with edge priorities", "edgeprio"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1, 1);

    std::string input, profile_path, output, policy = "index", family, orientation = "direct";
    std::optional<Time> horizon;
    int players = 0;
    int param = 0;
    std::optional<int> family_players;
    SearchBudget budget;

    auto* validate = app.add_subcommand("validate", "Check an instance file");
    validate->add_option("-i,--input", input, "Instance JSON")->required();

    auto* simulate_cmd = app.add_subcommand("simulate", "Simulate a strategy profile");
    simulate_cmd->add_option("-i,--input", input, "Instance JSON")->required();
    simulate_cmd->add_option("-p,--profile", profile_path, "Profile JSON")->required();
    simulate_cmd->add_option("-o,--output", output, "Trace JSON");

    auto* solve = app.add_subcommand("solve", "Compute an equilibrium with the sequential algorithm");
    solve->add_option("-i,--input", input, "Instance JSON")->required();
    solve->add_option("--sink-policy", policy, "index | roundrobin | fixed:<ids>");
    solve->add_option("-o,--output", output, "Profile JSON");

    auto* analyze = app.add_subcommand("analyze", "Optimum, equilibria and prices by exhaustive search");
    analyze->add_option("-i,--input", input, "Instance JSON")->required();
    analyze->add_option("--horizon", horizon, "Arrival horizon (default: shortest distance + players)");
    analyze->add_option("--max-profiles", budget.max_profiles, "Profile budget for the exhaustive searches");
    analyze->add_option("-o,--output", output, "Report JSON");

    auto* eaf = app.add_subcommand("eaf", "Earliest arrival flow");
    eaf->add_option("-i,--input", input, "Instance JSON")->required();
    eaf->add_option("-k,--players", players, "Number of players")->required()->check(CLI::NonNegativeNumber);
    eaf->add_option("-o,--output", output, "Result JSON");

    auto* priolist = app.add_subcommand("priolist", "Global priority list from the earliest arrival flow");
    priolist->add_option("-i,--input", input, "Instance JSON")->required();
    priolist->add_option("-k,--players", players, "Number of players")->required()->check(CLI::NonNegativeNumber);
    priolist->add_option("-o,--output", output, "Result JSON");

    auto* generate_cmd = app.add_subcommand("generate", "Write a named instance");
    generate_cmd->add_option("--family", family, "Instance family")->required();
    generate_cmd->add_option("--param", param, "Size parameter");
    generate_cmd->add_option("--players", family_players, "Player count (default depends on the family)");
    generate_cmd->add_option("--orientation", orientation, "direct | detour (fig7, fig8)")
        ->check(CLI::IsMember({"direct", "detour"}));
    generate_cmd->add_option("-o,--output", output, "Instance JSON");

    std::vector<const char*> argv{"edgeprio"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitMalformed;
    }

    Context ctx{out, err, output};
    try {
        if (*validate) return cmd_validate(ctx, input);
        if (*simulate_cmd) return cmd_simulate(ctx, input, profile_path);
        if (*solve) return cmd_solve(ctx, input, policy);
        if (*analyze) {
            budget.horizon = horizon;
            return cmd_analyze(ctx, input, budget);
        }
        if (*eaf) return cmd_eaf(ctx, input, players);
        if (*priolist) return cmd_priolist(ctx, input, players);
        if (*generate_cmd) {
            FamilySpec spec{family, param, family_players,
                            orientation == "detour" ? Orientation::DetourFirst : Orientation::DirectFirst};
            return cmd_generate(ctx, spec);
        }
    } catch (const MalformedInput& e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitMalformed;
}

}  // namespace edgeprio
