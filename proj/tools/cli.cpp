#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pdptw/ga.hpp"
#include "pdptw/io.hpp"
#include "pdptw/model.hpp"
#include "pdptw/oracle.hpp"

namespace pdptw::cli {

namespace {

struct Options {
    std::string instance_path;
    std::string route_path;
    std::string weights = "1,1,1";
    std::string format = "text";
    std::string out_path;
    GaConfig ga;
    std::size_t max_visits = OracleLimits{}.max_serving_visits;
    std::size_t max_vehicles = OracleLimits{}.max_vehicles;
    long long budget_ms = OracleLimits{}.time_budget.count();
};

auto parse_weights(std::string const& text) -> Weights
{
    std::vector<double> values;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, ',');) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(part, &used);
        } catch (std::exception const&) {
            used = 0;
        }
        if (used == 0 || used != part.size()) {
            throw std::invalid_argument("--weights: malformed value '" + part + "'");
        }
        values.push_back(v);
    }
    if (values.size() != 3) {
        throw std::invalid_argument("--weights expects three comma-separated values");
    }
    try {
        return { values[0], values[1], values[2] };
    } catch (std::invalid_argument const& e) {
        throw std::invalid_argument(std::string("--weights: ") + e.what());
    }
}

auto thread_override() -> std::size_t
{
    char const* raw = std::getenv("PDPTW_THREADS");
    if (raw == nullptr || *raw == '\0') {
        return 1;
    }
    char* end = nullptr;
    auto v = std::strtoull(raw, &end, 10);
    if (*end != '\0') {
        throw std::invalid_argument(std::string("PDPTW_THREADS: not an integer '") + raw + "'");
    }
    return static_cast<std::size_t>(v); // 0 = one worker per hardware thread
}

void emit(Options const& opt, std::string const& text, std::ostream& out)
{
    if (opt.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(opt.out_path, std::ios::binary);
    if (!file) {
        throw IoError(opt.out_path + ": cannot open for writing (--out)");
    }
    file << text;
}

auto structured(Options const& opt) -> bool { return opt.format == "structured"; }

auto cmd_validate(Options const& opt, std::ostream& out) -> int
{
    auto instance = load_instance(opt.instance_path);
    auto warnings = reciprocity_warnings(instance);
    auto pairs = instance.precedence_pairs();
    std::string text;
    if (structured(opt)) {
        nlohmann::ordered_json doc;
        doc["nodes"] = instance.size();
        doc["vehicles"] = instance.vehicles().size();
        auto list = nlohmann::ordered_json::array();
        for (auto const& p : pairs) {
            list.push_back({ p.supplier, p.client });
        }
        doc["pairs"] = list;
        doc["total_supply"] = instance.total_supply();
        doc["total_demand"] = instance.total_demand();
        doc["warnings"] = warnings;
        text = doc.dump(2) + "\n";
    } else {
        std::ostringstream s;
        s << opt.instance_path << ": " << instance.size() << " nodes, " << instance.vehicles().size() << " vehicles, "
          << pairs.size() << " precedence pairs\n";
        s << "total supply " << format_fixed(instance.total_supply()) << ", total demand "
          << format_fixed(instance.total_demand()) << '\n';
        s << "pairs:";
        for (auto const& p : pairs) {
            s << " (" << p.supplier << ',' << p.client << ')';
        }
        s << '\n';
        for (auto const& w : warnings) {
            s << "warning: " << w << '\n';
        }
        text = s.str();
    }
    emit(opt, text, out);
    return kOk;
}

auto cmd_evaluate(Options const& opt, std::ostream& out) -> int
{
    auto instance = load_instance(opt.instance_path);
    auto solution = load_route_file(opt.route_path);
    auto weights = parse_weights(opt.weights);
    auto report = validate(instance, solution);
    emit(opt, structured(opt) ? report_json(solution, report, weights) : report_text(solution, report, weights), out);
    return report.feasible ? kOk : kInfeasible;
}

auto cmd_solve(Options const& opt, std::ostream& out) -> int
{
    auto instance = load_instance(opt.instance_path);
    auto config = opt.ga;
    config.weights = parse_weights(opt.weights);
    config.threads = thread_override();
    auto result = evolve(instance, config);
    emit(opt, structured(opt) ? solve_result_json(result) : solve_result_text(result), out);
    return kOk;
}

auto cmd_oracle(Options const& opt, std::ostream& out) -> int
{
    auto instance = load_instance(opt.instance_path);
    auto weights = parse_weights(opt.weights);
    OracleLimits limits{ opt.max_visits, opt.max_vehicles, std::chrono::milliseconds(opt.budget_ms) };
    auto result = exhaustive_best(instance, weights, limits);
    emit(opt, structured(opt) ? oracle_result_json(result, weights, limits) : oracle_result_text(result, weights), out);
    return result.feasible ? kOk : kInfeasible;
}

void add_common(CLI::App& cmd, Options& opt)
{
    cmd.add_option("instance", opt.instance_path, "Instance file (PDPTW 1 format)")->required();
    cmd.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({ "text", "structured" }));
    cmd.add_option("--out", opt.out_path, "Write the report to PATH instead of stdout");
}

} // namespace

auto run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) -> int
{
    CLI::App app{ "Multi-vehicle pickup and delivery with time windows: validate, evaluate, solve", "pdptw" };
    app.require_subcommand(1);
    Options opt;

    auto* validate_cmd = app.add_subcommand("validate", "Parse an instance and report its health");
    add_common(*validate_cmd, opt);

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Replay a route file against an instance");
    add_common(*evaluate_cmd, opt);
    evaluate_cmd->add_option("routes", opt.route_path, "Route file")->required();
    evaluate_cmd->add_option("--weights", opt.weights, "Aggregation weights l1,l2,l3");

    auto* solve_cmd = app.add_subcommand("solve", "Run the genetic algorithm");
    add_common(*solve_cmd, opt);
    solve_cmd->add_option("--weights", opt.weights, "Aggregation weights l1,l2,l3");
    solve_cmd->add_option("--seed", opt.ga.seed, "RNG seed");
    solve_cmd->add_option("--pop", opt.ga.population, "Population size");
    solve_cmd->add_option("--gens", opt.ga.generations, "Generations");
    solve_cmd->add_option("--cx", opt.ga.crossover_rate, "Crossover rate");
    solve_cmd->add_option("--mut", opt.ga.mutation_rate, "Mutation rate");
    solve_cmd->add_option("--tournament", opt.ga.tournament, "Tournament size");
    solve_cmd->add_option("--elites", opt.ga.elites, "Elite count");
    solve_cmd->add_option("--stagnation", opt.ga.stagnation_limit, "Stop after N generations without improvement (0 = off)");
    solve_cmd->add_option("--archive-cap", opt.ga.archive_capacity, "Pareto archive bound (0 = unbounded)");

    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive search on a tiny instance");
    add_common(*oracle_cmd, opt);
    oracle_cmd->add_option("--weights", opt.weights, "Aggregation weights l1,l2,l3");
    oracle_cmd->add_option("--max-visits", opt.max_visits, "Serving-visit limit");
    oracle_cmd->add_option("--max-vehicles", opt.max_vehicles, "Vehicles enumerated");
    oracle_cmd->add_option("--time-budget-ms", opt.budget_ms, "Wall-clock budget");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (CLI::CallForHelp const&) {
        out << app.help();
        return kOk;
    } catch (CLI::CallForAllHelp const&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (CLI::ParseError const& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (validate_cmd->parsed()) {
            return cmd_validate(opt, out);
        }
        if (evaluate_cmd->parsed()) {
            return cmd_evaluate(opt, out);
        }
        if (solve_cmd->parsed()) {
            return cmd_solve(opt, out);
        }
        return cmd_oracle(opt, out);
    } catch (OracleRefusal const& e) {
        err << "refused: " << e.what() << '\n';
        return kRefused;
    } catch (ConstructionError const& e) {
        err << "refused: " << opt.instance_path << ": " << e.what() << '\n';
        return kRefused;
    } catch (std::exception const& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

} // namespace pdptw::cli
