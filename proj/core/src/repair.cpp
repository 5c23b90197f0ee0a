#include "pdptw/ga.hpp"

#include <cmath>
#include <limits>

namespace pdptw {

namespace {

auto load_before(RouteTrace const& trace, std::size_t pos) -> double
{
    return pos == 0 ? 0.0 : trace.visits[pos - 1].load;
}

/// Added length of inserting `node` before position `pos`; nullopt when an edge is absent.
auto insertion_delta(Instance const& instance, std::vector<NodeId> const& visits, std::size_t pos, NodeId node)
    -> std::optional<double>
{
    auto prev = pos == 0 ? kDepot : visits[pos - 1];
    auto next = pos == visits.size() ? kDepot : visits[pos];
    auto in = instance.distance(prev, node);
    auto out = instance.distance(node, next);
    if (!in || !out) {
        return std::nullopt;
    }
    auto direct = instance.distance(prev, next);
    return *in + *out - (direct ? *direct : 0.0);
}

struct Slot {
    std::size_t route{};
    std::size_t position{};
    double delta{ std::numeric_limits<double>::infinity() };
};

void consider(Slot& best, std::size_t route, std::size_t position, std::optional<double> delta)
{
    if (delta && *delta < best.delta) {
        best = { route, position, *delta };
    }
}

void insert_at(Solution& solution, std::size_t route, std::size_t position, NodeId node)
{
    auto& v = solution.routes[route].visits;
    v.insert(v.begin() + static_cast<std::ptrdiff_t>(position), node);
}

auto fix_structure(Solution& solution, Evaluation const& ev) -> bool
{
    for (std::size_t r = 0; r < ev.traces.size(); ++r) {
        if (auto leg = ev.traces[r].absent_leg) {
            auto& v = solution.routes[r].visits;
            v.erase(v.begin() + static_cast<std::ptrdiff_t>(std::min(*leg, v.size() - 1)));
            return true;
        }
    }
    return false;
}

auto fix_precedence(Instance const& instance, Solution& solution, std::vector<ServicePoint> const& firsts) -> bool
{
    for (auto const& pair : instance.precedence_pairs()) {
        auto const& c = firsts[static_cast<std::size_t>(pair.client)];
        auto const& s = firsts[static_cast<std::size_t>(pair.supplier)];
        if (!c.served() || (s.served() && s.departure <= c.departure + kEpsilon)) {
            continue;
        }
        auto const suppliers = instance.suppliers_of(pair.client);
        for (auto sp : suppliers) {
            if (!firsts[static_cast<std::size_t>(sp)].served()) {
                // at route start the vehicle is empty, so the visit is sure to load
                insert_at(solution, c.route, 0, sp);
                return true;
            }
        }
        auto latest = firsts[static_cast<std::size_t>(suppliers.front())];
        for (auto sp : suppliers) {
            auto const& f = firsts[static_cast<std::size_t>(sp)];
            if (f.departure > latest.departure) {
                latest = f;
            }
        }
        auto& from = solution.routes[c.route].visits;
        from.erase(from.begin() + static_cast<std::ptrdiff_t>(c.position));
        if (latest.route == c.route) {
            insert_at(solution, latest.route, latest.position, pair.client);
        } else {
            insert_at(solution, latest.route, latest.position + 1, pair.client);
        }
        return true;
    }
    return false;
}

auto fix_capacity(Instance const& instance, Solution& solution, Evaluation const& ev) -> bool
{
    for (std::size_t r = 0; r < ev.traces.size(); ++r) {
        auto const& trace = ev.traces[r];
        auto const cap = instance.vehicle(trace.vehicle).capacity;
        for (std::size_t p = 0; p < trace.visits.size(); ++p) {
            auto const& v = trace.visits[p];
            if (v.transfer <= 0 || v.load < cap - kEpsilon
                || ev.remaining[static_cast<std::size_t>(v.node)] <= kEpsilon) {
                continue;
            }
            Slot best;
            auto const& visits = solution.routes[r].visits;
            for (std::size_t q = p + 1; q <= visits.size(); ++q) {
                if (load_before(trace, q) < cap - kEpsilon) {
                    consider(best, r, q, insertion_delta(instance, visits, q, v.node));
                }
            }
            if (best.delta < std::numeric_limits<double>::infinity()) {
                insert_at(solution, best.route, best.position, v.node);
                return true;
            }
        }
    }
    return false;
}

auto fix_coverage(Instance const& instance, Solution& solution, Evaluation const& ev,
    std::vector<ServicePoint> const& firsts) -> bool
{
    for (auto const& node : instance.nodes()) {
        if (ev.remaining[static_cast<std::size_t>(node.id)] <= kEpsilon) {
            continue;
        }
        Slot best;
        for (std::size_t r = 0; r < solution.routes.size(); ++r) {
            auto const& trace = ev.traces[r];
            auto const cap = instance.vehicle(trace.vehicle).capacity;
            auto const& visits = solution.routes[r].visits;
            for (std::size_t q = 0; q <= visits.size(); ++q) {
                if (load_before(trace, q) < cap - kEpsilon) {
                    consider(best, r, q, insertion_delta(instance, visits, q, node.id));
                }
            }
        }
        if (best.delta < std::numeric_limits<double>::infinity()) {
            insert_at(solution, best.route, best.position, node.id);
            return true;
        }
    }
    for (auto const& node : instance.nodes()) {
        if (ev.remaining[static_cast<std::size_t>(node.id)] >= -kEpsilon) {
            continue;
        }
        auto const suppliers = instance.suppliers_of(node.id);
        Slot best;
        for (std::size_t r = 0; r < solution.routes.size(); ++r) {
            auto const& trace = ev.traces[r];
            auto const& visits = solution.routes[r].visits;
            std::size_t earliest = 0;
            for (auto sp : suppliers) {
                auto const& f = firsts[static_cast<std::size_t>(sp)];
                if (f.served() && f.route == r) {
                    earliest = std::max(earliest, f.position + 1);
                }
            }
            for (std::size_t q = earliest; q <= visits.size(); ++q) {
                if (load_before(trace, q) > kEpsilon) {
                    consider(best, r, q, insertion_delta(instance, visits, q, node.id));
                }
            }
        }
        if (best.delta < std::numeric_limits<double>::infinity()) {
            insert_at(solution, best.route, best.position, node.id);
            return true;
        }
    }
    return false;
}

} // namespace

auto repair(Instance const& instance, Chromosome chromosome) -> std::optional<Chromosome>
{
    thread_local Evaluation ev;
    thread_local std::vector<ServicePoint> firsts;

    double splits = 0;
    double max_capacity = 0;
    for (auto const& v : instance.vehicles()) {
        max_capacity = std::max(max_capacity, v.capacity);
    }
    for (auto const& n : instance.nodes()) {
        if (n.q != 0 && max_capacity > 0) {
            splits += std::ceil(std::abs(n.q) / max_capacity);
        }
    }
    auto const limit = 8 * (chromosome.visit_count() + instance.size()) + 32;
    auto const max_visits = chromosome.visit_count() + 4 * (instance.size() + static_cast<std::size_t>(splits)) + 16;

    for (std::size_t pass = 0; pass < limit; ++pass) {
        auto const& solution = chromosome.solution();
        evaluate(instance, solution, ev);
        auto status = hard_status(instance, solution, ev);
        if (status.feasible()) {
            return chromosome;
        }
        if (chromosome.visit_count() > max_visits) {
            return std::nullopt;
        }
        auto& editable = chromosome.edit();
        if (!status.structure) {
            if (!fix_structure(editable, ev)) {
                return std::nullopt;
            }
            continue;
        }
        first_services(ev, instance.size(), firsts);
        if (!status.precedence && fix_precedence(instance, editable, firsts)) {
            continue;
        }
        if (fix_capacity(instance, editable, ev)) {
            continue;
        }
        if (fix_coverage(instance, editable, ev, firsts)) {
            continue;
        }
        return std::nullopt;
    }
    return std::nullopt;
}

} // namespace pdptw
