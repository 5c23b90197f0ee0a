#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>

#include "pdptw/evaluation.hpp"
#include "pdptw/moo.hpp"

namespace pdptw {

struct OracleLimits {
    std::size_t max_serving_visits{ 8 };
    std::size_t max_vehicles{ 2 };
    std::chrono::milliseconds time_budget{ 60'000 };
};

/// The instance is outside the oracle's limits (or the time budget ran out).
class OracleRefusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    bool feasible{};
    double aggregate{};
    ObjectiveVector vector;
    Solution witness;
    ParetoArchive front; // non-dominated vectors over every feasible leaf
    std::uint64_t leaves{};
};

/// Serving visits needed if every nonzero node is split only as far as the widest vehicle forces.
auto required_serving_visits(Instance const& instance) -> std::size_t;

/// Depth-first enumeration of serving-visit sequences over the first `max_vehicles` vehicles,
/// each node visited at most twice. Leaves are scored with objective_vector and must pass the
/// hard families. Ties on the aggregate keep the first leaf found (ascending node order).
auto exhaustive_best(Instance const& instance, Weights const& weights, OracleLimits const& limits = {}) -> OracleResult;

} // namespace pdptw
