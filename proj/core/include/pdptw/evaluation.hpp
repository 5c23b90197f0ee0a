#pragma once

#include <array>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdptw/model.hpp"

namespace pdptw {

/// Quantities and times closer than this are treated as equal.
inline constexpr double kEpsilon = 1e-9;

struct Route {
    VehicleId vehicle{};
    std::vector<NodeId> visits; // depot endpoints implicit

    friend auto operator==(Route const&, Route const&) -> bool = default;
};

struct Solution {
    std::vector<Route> routes;

    friend auto operator==(Solution const&, Solution const&) -> bool = default;
};

struct VisitRecord {
    NodeId node{};
    double arrival{};
    double start{};     // max(arrival, e) for serving visits, arrival otherwise
    double departure{};
    double transfer{};  // > 0 pickup, < 0 delivery, 0 pass-through
    double load{};      // load after the transfer
    double tardiness{};

    [[nodiscard]] auto serving() const noexcept -> bool { return transfer != 0.0; }
    [[nodiscard]] auto waiting() const noexcept -> double { return start - arrival; }
};

struct RouteTrace {
    VehicleId vehicle{};
    std::vector<VisitRecord> visits;
    double distance{};
    double tardiness{};
    double waiting{};
    double return_time{};      // arrival back at the depot (0 for an empty route)
    double return_lateness{};  // informational: max(0, return_time - l_depot)
    std::optional<std::size_t> absent_leg; // first leg with no edge; visits.size() denotes the return leg

    [[nodiscard]] auto has_service() const noexcept -> bool;
};

/// (vehicles used, total tardiness, transport cost).
struct ObjectiveVector {
    double vehicles{};
    double tardiness{};
    double cost{};

    [[nodiscard]] auto values() const noexcept -> std::array<double, 3> { return { vehicles, tardiness, cost }; }

    friend auto operator==(ObjectiveVector const&, ObjectiveVector const&) -> bool = default;
};

/// Outstanding quantity per node, initialized to q (suppliers > 0, clients < 0).
auto initial_remaining(Instance const& instance) -> std::vector<double>;

/// Replays one vehicle's visits. Suppliers load min(remaining supply, spare capacity),
/// clients unload min(remaining demand, load); zero-transfer visits are pass-throughs.
/// `remaining` is decremented in place. Throws std::invalid_argument on unknown or depot ids.
auto simulate_route(Instance const& instance, VehicleSpec const& vehicle, std::span<NodeId const> visits,
    std::span<double> remaining) -> RouteTrace;
void simulate_route(Instance const& instance, VehicleSpec const& vehicle, std::span<NodeId const> visits,
    std::span<double> remaining, RouteTrace& out);

struct Evaluation {
    std::vector<RouteTrace> traces; // parallel to Solution::routes
    std::vector<double> remaining;  // after all routes
    ObjectiveVector vector;
    bool structurally_feasible{ true };
};

/// Routes are replayed in listing order against one shared `remaining` table.
void evaluate(Instance const& instance, Solution const& solution, Evaluation& out);
auto evaluate(Instance const& instance, Solution const& solution) -> Evaluation;
auto objective_vector(Instance const& instance, Solution const& solution) -> ObjectiveVector;

struct ServicePoint {
    double departure{ std::numeric_limits<double>::infinity() };
    std::size_t route{};
    std::size_t position{};

    [[nodiscard]] auto served() const noexcept -> bool { return departure != std::numeric_limits<double>::infinity(); }
};

/// Earliest serving departure of every node.
void first_services(Evaluation const& evaluation, std::size_t node_count, std::vector<ServicePoint>& out);

struct HardStatus {
    bool structure{ true };
    bool coverage{ true };
    bool capacity{ true };
    bool precedence{ true };

    [[nodiscard]] auto feasible() const noexcept -> bool { return structure && coverage && capacity && precedence; }
};

/// Fast verdict on the hard families without building a report.
auto hard_status(Instance const& instance, Solution const& solution, Evaluation const& evaluation) -> HardStatus;
auto hard_status(Instance const& instance, Solution const& solution) -> HardStatus;

enum class Family { coverage, depot, flow, capacity, precedence, windows };

inline constexpr std::array<Family, 6> kFamilies{ Family::coverage, Family::depot, Family::flow, Family::capacity,
    Family::precedence, Family::windows };

auto family_name(Family family) -> char const*;

struct FamilyVerdict {
    Family family{};
    bool pass{ true };
    bool hard{ true };
    std::vector<std::string> details;
};

struct ValidationReport {
    std::array<FamilyVerdict, 6> families;
    bool feasible{};
    std::optional<Evaluation> evaluation; // absent when the solution references unknown ids

    [[nodiscard]] auto operator[](Family f) const -> FamilyVerdict const& { return families[static_cast<std::size_t>(f)]; }
};

auto validate(Instance const& instance, Solution const& solution) -> ValidationReport;

} // namespace pdptw
