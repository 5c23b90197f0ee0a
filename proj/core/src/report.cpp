#include "pdptw/evaluation.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace pdptw {

namespace {

auto fixed(double v) -> std::string
{
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(6);
    out << v;
    return out.str();
}

void fail(FamilyVerdict& verdict, std::string detail)
{
    verdict.pass = false;
    verdict.details.push_back(std::move(detail));
}

} // namespace

auto validate(Instance const& instance, Solution const& solution) -> ValidationReport
{
    ValidationReport report;
    for (std::size_t i = 0; i < kFamilies.size(); ++i) {
        report.families[i].family = kFamilies[i];
    }
    auto& coverage = report.families[static_cast<std::size_t>(Family::coverage)];
    auto& depot = report.families[static_cast<std::size_t>(Family::depot)];
    auto& flow = report.families[static_cast<std::size_t>(Family::flow)];
    auto& capacity = report.families[static_cast<std::size_t>(Family::capacity)];
    auto& precedence = report.families[static_cast<std::size_t>(Family::precedence)];
    auto& windows = report.families[static_cast<std::size_t>(Family::windows)];
    windows.hard = false;

    std::set<VehicleId> seen;
    for (auto const& route : solution.routes) {
        if (!instance.has_vehicle(route.vehicle)) {
            fail(depot, "unknown vehicle " + std::to_string(route.vehicle));
        } else if (!seen.insert(route.vehicle).second) {
            fail(depot, "vehicle " + std::to_string(route.vehicle) + " leaves the depot more than once");
        }
        for (auto id : route.visits) {
            if (!instance.contains(id)) {
                fail(flow, "vehicle " + std::to_string(route.vehicle) + " visits unknown node " + std::to_string(id));
            } else if (id == kDepot) {
                fail(flow, "vehicle " + std::to_string(route.vehicle) + " passes the depot mid-route");
            }
        }
    }
    if (depot.pass) {
        depot.details.push_back("each route starts and ends at the depot by construction");
    }

    if (!depot.pass || !flow.pass) {
        for (auto* v : { &coverage, &capacity, &precedence, &windows }) {
            fail(*v, "not evaluated: structurally invalid solution");
        }
        report.feasible = false;
        return report;
    }

    auto ev = evaluate(instance, solution);

    for (auto const& trace : ev.traces) {
        if (trace.absent_leg) {
            auto const i = *trace.absent_leg;
            auto from = i == 0 ? kDepot : trace.visits[i - 1].node;
            auto to = i == trace.visits.size() ? kDepot : trace.visits[i].node;
            fail(flow, "vehicle " + std::to_string(trace.vehicle) + " traverses absent edge " + std::to_string(from)
                + " -> " + std::to_string(to));
        }
    }
    if (flow.pass) {
        flow.details.push_back("every visited node is left again by construction");
    }

    for (auto const& n : instance.nodes()) {
        auto rest = ev.remaining[static_cast<std::size_t>(n.id)];
        if (rest > kEpsilon) {
            fail(coverage, "node " + std::to_string(n.id) + ": supply " + fixed(rest) + " not picked up");
        } else if (rest < -kEpsilon) {
            fail(coverage, "node " + std::to_string(n.id) + ": demand " + fixed(-rest) + " not delivered");
        }
    }

    for (auto const& trace : ev.traces) {
        auto const cap = instance.vehicle(trace.vehicle).capacity;
        for (auto const& v : trace.visits) {
            if (v.load < -kEpsilon || v.load > cap + kEpsilon) {
                fail(capacity, "vehicle " + std::to_string(trace.vehicle) + " load " + fixed(v.load) + " at node "
                    + std::to_string(v.node) + " outside [0, " + fixed(cap) + "]");
            }
        }
    }

    std::vector<ServicePoint> firsts;
    first_services(ev, instance.size(), firsts);
    for (auto const& pair : instance.precedence_pairs()) {
        auto const& s = firsts[static_cast<std::size_t>(pair.supplier)];
        auto const& c = firsts[static_cast<std::size_t>(pair.client)];
        auto tag = "pair (" + std::to_string(pair.supplier) + "," + std::to_string(pair.client) + ")";
        if (!c.served()) {
            fail(precedence, tag + ": client never served");
        } else if (!s.served()) {
            fail(precedence, tag + ": supplier never served");
        } else if (s.departure > c.departure + kEpsilon) {
            fail(precedence, tag + ": supplier departs at " + fixed(s.departure) + " after client departs at "
                + fixed(c.departure));
        }
    }

    for (auto const& trace : ev.traces) {
        for (auto const& v : trace.visits) {
            if (v.serving() && v.tardiness > 0) {
                fail(windows, "vehicle " + std::to_string(trace.vehicle) + " late at node " + std::to_string(v.node)
                    + " by " + fixed(v.tardiness));
            }
        }
        if (trace.return_lateness > 0) {
            windows.details.push_back("vehicle " + std::to_string(trace.vehicle) + " returns to depot "
                + fixed(trace.return_lateness) + " after its window closes (informational)");
        }
    }

    report.feasible = true;
    for (auto const& f : report.families) {
        if (f.hard && !f.pass) {
            report.feasible = false;
        }
    }
    report.evaluation = std::move(ev);
    return report;
}

} // namespace pdptw
