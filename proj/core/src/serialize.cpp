#include "pdptw/io.hpp"

#include <charconv>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pdptw {

using json = nlohmann::ordered_json;

auto format_fixed(double value) -> std::string
{
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(6);
    out << value;
    return out.str();
}

auto parse_route_file(std::string_view text) -> Solution
{
    Solution solution;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto raw = std::string(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) {
            raw.resize(hash);
        }
        std::istringstream in(raw);
        std::vector<std::string> tok;
        for (std::string t; in >> t;) {
            tok.push_back(t);
        }
        if (tok.empty()) {
            continue;
        }
        if (tok[0] != "R" || tok.size() < 3 || tok[2] != ":") {
            throw ParseError(line_no, "expected 'R <vehicle> : <node ids>'");
        }
        auto number = [&](std::string const& t, char const* what) {
            int v{};
            auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
            if (ec != std::errc{} || ptr != t.data() + t.size()) {
                throw ParseError(line_no, std::string("malformed ") + what + " '" + t + "'");
            }
            return v;
        };
        Route route{ number(tok[1], "vehicle id"), {} };
        std::vector<NodeId> path;
        for (std::size_t i = 3; i < tok.size(); ++i) {
            path.push_back(number(tok[i], "node id"));
        }
        if (path.size() < 2 || path.front() != kDepot || path.back() != kDepot) {
            throw ParseError(line_no, "route must start and end at depot 0");
        }
        route.visits.assign(path.begin() + 1, path.end() - 1);
        solution.routes.push_back(std::move(route));
    }
    return solution;
}

auto load_route_file(std::string const& path) -> Solution
{
    auto text = read_text_file(path);
    try {
        return parse_route_file(text);
    } catch (ParseError const& e) {
        throw ParseError(e.line(), e.reason(), path);
    }
}

auto format_route(Route const& route) -> std::string
{
    std::string out = "R " + std::to_string(route.vehicle) + " : 0";
    for (auto id : route.visits) {
        out += ' ';
        out += std::to_string(id);
    }
    out += " 0";
    return out;
}

auto format_route_file(Solution const& solution) -> std::string
{
    std::string out;
    for (auto const& r : solution.routes) {
        out += format_route(r);
        out += '\n';
    }
    return out;
}

auto export_archive(ParetoArchive const& archive, Weights const& weights) -> std::string
{
    std::string out;
    for (auto const& e : archive.sorted(weights)) {
        out += format_fixed(e.vector.vehicles) + ' ' + format_fixed(e.vector.tardiness) + ' '
            + format_fixed(e.vector.cost) + ' ' + format_fixed(aggregate(weights, e.vector)) + " :";
        for (std::size_t i = 0; i < e.solution.routes.size(); ++i) {
            out += i == 0 ? " " : " ; ";
            out += format_route(e.solution.routes[i]);
        }
        out += '\n';
    }
    return out;
}

namespace {

auto routes_json(Solution const& solution) -> json
{
    auto out = json::array();
    for (auto const& r : solution.routes) {
        auto path = json::array({ kDepot });
        for (auto id : r.visits) {
            path.push_back(id);
        }
        path.push_back(kDepot);
        out.push_back({ { "vehicle", r.vehicle }, { "path", path } });
    }
    return out;
}

auto vector_json(ObjectiveVector const& v) -> json
{
    return { { "f1", v.vehicles }, { "f2", v.tardiness }, { "f3", v.cost } };
}

auto weights_json(Weights const& w) -> json { return json::array({ w.vehicles(), w.tardiness(), w.cost() }); }

auto front_json(ParetoArchive const& archive, Weights const& weights) -> json
{
    auto out = json::array();
    for (auto const& e : archive.sorted(weights)) {
        out.push_back({ { "vector", vector_json(e.vector) }, { "aggregate", aggregate(weights, e.vector) },
            { "routes", routes_json(e.solution) } });
    }
    return out;
}

auto total_distance(ValidationReport const& report) -> double
{
    double d = 0;
    if (report.evaluation) {
        for (auto const& t : report.evaluation->traces) {
            d += t.distance;
        }
    }
    return d;
}

} // namespace

auto report_json(Solution const& solution, ValidationReport const& report, Weights const& weights) -> std::string
{
    json doc;
    doc["feasible"] = report.feasible;
    auto v = report.evaluation ? report.evaluation->vector : ObjectiveVector{};
    doc["f1"] = v.vehicles;
    doc["f2"] = v.tardiness;
    doc["f3"] = v.cost;
    doc["aggregate"] = aggregate(weights, v);
    doc["distance"] = total_distance(report);
    json families = json::object();
    for (auto const& f : report.families) {
        families[family_name(f.family)] = { { "pass", f.pass }, { "hard", f.hard }, { "details", f.details } };
    }
    doc["families"] = families;
    auto routes = json::array();
    if (report.evaluation) {
        for (std::size_t r = 0; r < report.evaluation->traces.size(); ++r) {
            auto const& t = report.evaluation->traces[r];
            auto visits = json::array();
            for (auto const& x : t.visits) {
                visits.push_back({ { "node", x.node }, { "arrival", x.arrival }, { "start", x.start },
                    { "departure", x.departure }, { "transfer", x.transfer }, { "load", x.load },
                    { "tardiness", x.tardiness } });
            }
            routes.push_back({ { "vehicle", t.vehicle }, { "distance", t.distance }, { "tardiness", t.tardiness },
                { "waiting", t.waiting }, { "return_time", t.return_time }, { "return_lateness", t.return_lateness },
                { "visits", visits } });
        }
    }
    doc["routes"] = routes;
    doc["solution"] = routes_json(solution);
    return doc.dump(2) + "\n";
}

auto report_text(Solution const& solution, ValidationReport const& report, Weights const& weights) -> std::string
{
    std::ostringstream out;
    auto v = report.evaluation ? report.evaluation->vector : ObjectiveVector{};
    out << "feasible: " << (report.feasible ? "yes" : "no") << '\n';
    out << "f1 (vehicles): " << format_fixed(v.vehicles) << '\n';
    out << "f2 (tardiness): " << format_fixed(v.tardiness) << '\n';
    out << "f3 (cost): " << format_fixed(v.cost) << '\n';
    out << "aggregate: " << format_fixed(aggregate(weights, v)) << '\n';
    out << "distance: " << format_fixed(total_distance(report)) << '\n';
    for (auto const& f : report.families) {
        out << family_name(f.family) << ": " << (f.pass ? "pass" : "FAIL") << (f.hard ? "" : " (soft)") << '\n';
        for (auto const& d : f.details) {
            out << "  - " << d << '\n';
        }
    }
    if (report.evaluation) {
        for (auto const& t : report.evaluation->traces) {
            out << "vehicle " << t.vehicle << ": distance " << format_fixed(t.distance) << ", return "
                << format_fixed(t.return_time) << '\n';
            out << "  node arrival start departure transfer load tardiness\n";
            for (auto const& x : t.visits) {
                out << "  " << x.node << ' ' << format_fixed(x.arrival) << ' ' << format_fixed(x.start) << ' '
                    << format_fixed(x.departure) << ' ' << format_fixed(x.transfer) << ' ' << format_fixed(x.load)
                    << ' ' << format_fixed(x.tardiness) << '\n';
            }
        }
    }
    out << format_route_file(solution);
    return out.str();
}

auto solve_result_json(SolveResult const& result) -> std::string
{
    auto const& c = result.config;
    json doc;
    doc["method"] = "genetic";
    doc["best"] = routes_json(result.best);
    doc["vector"] = vector_json(result.vector);
    doc["aggregate"] = result.aggregate;
    doc["front"] = front_json(result.front, c.weights);
    doc["history"] = result.history;
    doc["evaluations"] = result.evaluations;
    doc["seed"] = c.seed;
    doc["config"] = {
        { "population", c.population },
        { "generations", c.generations },
        { "crossover_rate", c.crossover_rate },
        { "mutation_rate", c.mutation_rate },
        { "tournament", c.tournament },
        { "elites", c.elites },
        { "weights", weights_json(c.weights) },
        { "stagnation_limit", c.stagnation_limit },
        { "archive_capacity", c.archive_capacity },
    };
    return doc.dump(2) + "\n";
}

auto solve_result_text(SolveResult const& result) -> std::string
{
    std::ostringstream out;
    auto const& v = result.vector;
    out << "best aggregate: " << format_fixed(result.aggregate) << '\n';
    out << "vector: " << format_fixed(v.vehicles) << ' ' << format_fixed(v.tardiness) << ' ' << format_fixed(v.cost)
        << '\n';
    out << "evaluations: " << result.evaluations << '\n';
    out << "seed: " << result.config.seed << '\n';
    out << "best solution:\n" << format_route_file(result.best);
    out << "pareto front (f1 f2 f3 aggregate : routes):\n" << export_archive(result.front, result.config.weights);
    out << "history (generation best_aggregate):\n";
    for (std::size_t g = 0; g < result.history.size(); ++g) {
        out << g << ' ' << format_fixed(result.history[g]) << '\n';
    }
    return out.str();
}

auto oracle_result_json(OracleResult const& result, Weights const& weights, OracleLimits const& limits) -> std::string
{
    json doc;
    doc["method"] = "exhaustive";
    doc["feasible"] = result.feasible;
    doc["best"] = routes_json(result.witness);
    doc["vector"] = vector_json(result.vector);
    doc["aggregate"] = result.aggregate;
    doc["front"] = front_json(result.front, weights);
    doc["history"] = json::array();
    doc["evaluations"] = result.leaves;
    doc["seed"] = nullptr;
    doc["config"] = {
        { "weights", weights_json(weights) },
        { "max_serving_visits", limits.max_serving_visits },
        { "max_vehicles", limits.max_vehicles },
        { "time_budget_ms", limits.time_budget.count() },
    };
    return doc.dump(2) + "\n";
}

auto oracle_result_text(OracleResult const& result, Weights const& weights) -> std::string
{
    std::ostringstream out;
    if (!result.feasible) {
        out << "no feasible solution within the enumerated space\n";
        return out.str();
    }
    auto const& v = result.vector;
    out << "optimal aggregate: " << format_fixed(result.aggregate) << '\n';
    out << "vector: " << format_fixed(v.vehicles) << ' ' << format_fixed(v.tardiness) << ' ' << format_fixed(v.cost)
        << '\n';
    out << "feasible leaves: " << result.leaves << '\n';
    out << "witness:\n" << format_route_file(result.witness);
    out << "pareto set (f1 f2 f3 aggregate : routes):\n" << export_archive(result.front, weights);
    return out.str();
}

} // namespace pdptw
