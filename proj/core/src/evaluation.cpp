#include "pdptw/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pdptw {

auto RouteTrace::has_service() const noexcept -> bool
{
    return std::ranges::any_of(visits, &VisitRecord::serving);
}

auto initial_remaining(Instance const& instance) -> std::vector<double>
{
    std::vector<double> remaining;
    remaining.reserve(instance.size());
    for (auto const& n : instance.nodes()) {
        remaining.push_back(n.q);
    }
    return remaining;
}

void simulate_route(Instance const& instance, VehicleSpec const& vehicle, std::span<NodeId const> visits,
    std::span<double> remaining, RouteTrace& out)
{
    out.vehicle = vehicle.id;
    out.visits.clear();
    out.distance = 0;
    out.tardiness = 0;
    out.waiting = 0;
    out.return_time = 0;
    out.return_lateness = 0;
    out.absent_leg.reset();
    if (visits.empty()) {
        return;
    }

    double clock = 0; // D_0 = 0
    double load = 0;
    NodeId at = kDepot;

    auto travel = [&](NodeId to, std::size_t leg) {
        auto d = instance.distance(at, to);
        if (!d) {
            if (!out.absent_leg) {
                out.absent_leg = leg;
            }
            return;
        }
        out.distance += *d;
        clock += *d / vehicle.speed;
    };

    for (std::size_t i = 0; i < visits.size(); ++i) {
        auto const id = visits[i];
        if (!instance.contains(id) || id == kDepot) {
            throw std::invalid_argument("route of vehicle " + std::to_string(vehicle.id) + " visits invalid node "
                + std::to_string(id));
        }
        travel(id, i);
        auto const& node = instance.node(id);
        auto& rest = remaining[static_cast<std::size_t>(id)];

        VisitRecord v{ .node = id, .arrival = clock, .start = clock, .departure = clock };
        double amount = 0;
        if (rest > kEpsilon) {
            amount = std::min(rest, vehicle.capacity - load);
        } else if (rest < -kEpsilon) {
            amount = -std::min(-rest, load);
        }
        if (std::abs(amount) > kEpsilon) {
            v.transfer = amount;
            v.start = std::max(clock, node.e);
            v.tardiness = std::max(0.0, v.start - node.l);
            v.departure = v.start + node.s;
            load += amount;
            rest -= amount;
            if (std::abs(rest) <= kEpsilon) {
                rest = 0;
            }
            if (std::abs(load) <= kEpsilon) {
                load = 0;
            }
            out.tardiness += v.tardiness;
            out.waiting += v.waiting();
            clock = v.departure;
        }
        v.load = load;
        out.visits.push_back(v);
        at = id;
    }
    travel(kDepot, visits.size());
    out.return_time = clock;
    out.return_lateness = std::max(0.0, clock - instance.node(kDepot).l);
}

auto simulate_route(Instance const& instance, VehicleSpec const& vehicle, std::span<NodeId const> visits,
    std::span<double> remaining) -> RouteTrace
{
    RouteTrace trace;
    simulate_route(instance, vehicle, visits, remaining, trace);
    return trace;
}

void evaluate(Instance const& instance, Solution const& solution, Evaluation& out)
{
    out.remaining.resize(instance.size());
    for (std::size_t i = 0; i < instance.size(); ++i) {
        out.remaining[i] = instance.nodes()[i].q;
    }
    out.traces.resize(solution.routes.size());
    out.vector = {};
    out.structurally_feasible = true;
    for (std::size_t r = 0; r < solution.routes.size(); ++r) {
        auto const& route = solution.routes[r];
        if (!instance.has_vehicle(route.vehicle)) {
            throw std::invalid_argument("unknown vehicle " + std::to_string(route.vehicle));
        }
        auto const& vehicle = instance.vehicle(route.vehicle);
        auto& trace = out.traces[r];
        simulate_route(instance, vehicle, route.visits, out.remaining, trace);
        if (trace.absent_leg) {
            out.structurally_feasible = false;
        }
        if (trace.has_service()) {
            out.vector.vehicles += 1;
        }
        out.vector.tardiness += trace.tardiness;
        out.vector.cost += vehicle.unit_cost * trace.distance;
    }
}

auto evaluate(Instance const& instance, Solution const& solution) -> Evaluation
{
    Evaluation ev;
    evaluate(instance, solution, ev);
    return ev;
}

auto objective_vector(Instance const& instance, Solution const& solution) -> ObjectiveVector
{
    return evaluate(instance, solution).vector;
}

void first_services(Evaluation const& evaluation, std::size_t node_count, std::vector<ServicePoint>& out)
{
    out.assign(node_count, ServicePoint{});
    for (std::size_t r = 0; r < evaluation.traces.size(); ++r) {
        auto const& visits = evaluation.traces[r].visits;
        for (std::size_t p = 0; p < visits.size(); ++p) {
            auto const& v = visits[p];
            if (!v.serving()) {
                continue;
            }
            auto& slot = out[static_cast<std::size_t>(v.node)];
            if (v.departure < slot.departure) {
                slot = { v.departure, r, p };
            }
        }
    }
}

namespace {

auto duplicate_vehicles(Solution const& solution) -> bool
{
    for (std::size_t a = 0; a < solution.routes.size(); ++a) {
        for (std::size_t b = a + 1; b < solution.routes.size(); ++b) {
            if (solution.routes[a].vehicle == solution.routes[b].vehicle) {
                return true;
            }
        }
    }
    return false;
}

auto precedence_holds(ServicePoint const& supplier, ServicePoint const& client) -> bool
{
    return supplier.served() && client.served() && supplier.departure <= client.departure + kEpsilon;
}

} // namespace

auto hard_status(Instance const& instance, Solution const& solution, Evaluation const& evaluation) -> HardStatus
{
    HardStatus status;
    status.structure = evaluation.structurally_feasible && !duplicate_vehicles(solution);
    status.coverage = std::ranges::all_of(evaluation.remaining, [](double r) { return std::abs(r) <= kEpsilon; });
    for (std::size_t r = 0; r < evaluation.traces.size() && status.capacity; ++r) {
        auto const cap = instance.vehicle(evaluation.traces[r].vehicle).capacity;
        for (auto const& v : evaluation.traces[r].visits) {
            if (v.load < -kEpsilon || v.load > cap + kEpsilon) {
                status.capacity = false;
                break;
            }
        }
    }
    if (!instance.precedence_pairs().empty()) {
        thread_local std::vector<ServicePoint> firsts;
        first_services(evaluation, instance.size(), firsts);
        for (auto const& pair : instance.precedence_pairs()) {
            if (!precedence_holds(firsts[static_cast<std::size_t>(pair.supplier)],
                    firsts[static_cast<std::size_t>(pair.client)])) {
                status.precedence = false;
                break;
            }
        }
    }
    return status;
}

auto hard_status(Instance const& instance, Solution const& solution) -> HardStatus
{
    return hard_status(instance, solution, evaluate(instance, solution));
}

auto family_name(Family family) -> char const*
{
    switch (family) {
    case Family::coverage: return "coverage";
    case Family::depot: return "depot";
    case Family::flow: return "flow";
    case Family::capacity: return "capacity";
    case Family::precedence: return "precedence";
    case Family::windows: return "windows";
    }
    return "?";
}

} // namespace pdptw
