#include "pdptw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pdptw {

auto required_serving_visits(Instance const& instance) -> std::size_t
{
    double widest = 0;
    for (auto const& v : instance.vehicles()) {
        widest = std::max(widest, v.capacity);
    }
    std::size_t count = 0;
    for (auto const& n : instance.nodes()) {
        if (n.q != 0) {
            count += widest > 0 ? static_cast<std::size_t>(std::ceil(std::abs(n.q) / widest)) : 1;
        }
    }
    return count;
}

namespace {

class Search {
public:
    Search(Instance const& instance, Weights const& weights, OracleLimits const& limits)
        : instance_(instance)
        , weights_(weights)
        , limits_(limits)
        , started_(std::chrono::steady_clock::now())
        , remaining_(initial_remaining(instance))
        , visits_(instance.size(), 0)
        , loads_(std::min(instance.vehicles().size(), limits.max_vehicles), 0.0)
    {
        for (std::size_t k = 0; k < loads_.size(); ++k) {
            plan_.routes.push_back({ instance.vehicles()[k].id, {} });
        }
        result_.aggregate = std::numeric_limits<double>::infinity();
    }

    auto run() -> OracleResult
    {
        if (covered()) {
            leaf();
        } else if (!loads_.empty()) {
            descend(0);
        }
        result_.feasible = result_.aggregate < std::numeric_limits<double>::infinity();
        if (!result_.feasible) {
            result_.aggregate = 0;
        }
        return std::move(result_);
    }

private:
    auto covered() const -> bool
    {
        return std::ranges::all_of(remaining_, [](double r) { return std::abs(r) <= kEpsilon; });
    }

    void check_budget()
    {
        if ((++steps_ & 0xFFF) == 0 && std::chrono::steady_clock::now() - started_ > limits_.time_budget) {
            throw OracleRefusal("oracle time budget of " + std::to_string(limits_.time_budget.count())
                + " ms exhausted");
        }
    }

    // A client first served while one of its suppliers (with nonzero service time) is still
    // unserved can never satisfy precedence on a single route.
    auto precedence_lost(NodeId client) const -> bool
    {
        if (loads_.size() != 1 || visits_[static_cast<std::size_t>(client)] > 0) {
            return false;
        }
        for (auto sp : instance_.suppliers_of(client)) {
            if (visits_[static_cast<std::size_t>(sp)] == 0 && instance_.node(sp).s > 0) {
                return true;
            }
        }
        return false;
    }

    void descend(std::size_t k)
    {
        check_budget();
        if (covered()) {
            leaf();
            return;
        }
        auto const capacity = instance_.vehicles()[k].capacity;
        auto& load = loads_[k];
        for (NodeId id = 1; static_cast<std::size_t>(id) < instance_.size(); ++id) {
            auto const slot = static_cast<std::size_t>(id);
            if (visits_[slot] >= 2) {
                continue;
            }
            auto const rest = remaining_[slot];
            double amount = 0;
            if (rest > kEpsilon) {
                amount = std::min(rest, capacity - load);
            } else if (rest < -kEpsilon) {
                amount = -std::min(-rest, load);
            }
            if (std::abs(amount) <= kEpsilon) {
                continue;
            }
            if (amount < 0 && precedence_lost(id)) {
                continue;
            }
            auto const saved_load = load;
            load += amount;
            remaining_[slot] = std::abs(rest - amount) <= kEpsilon ? 0.0 : rest - amount;
            if (std::abs(load) <= kEpsilon) {
                load = 0;
            }
            ++visits_[slot];
            plan_.routes[k].visits.push_back(id);

            descend(k);

            plan_.routes[k].visits.pop_back();
            --visits_[slot];
            remaining_[slot] = rest;
            load = saved_load;
        }
        if (k + 1 < loads_.size()) {
            descend(k + 1);
        }
    }

    void leaf()
    {
        evaluate(instance_, plan_, scratch_);
        if (!hard_status(instance_, plan_, scratch_).feasible()) {
            return;
        }
        ++result_.leaves;
        auto const& v = scratch_.vector;
        auto agg = aggregate(weights_, v);
        auto solution = plan_;
        std::erase_if(solution.routes, [](Route const& r) { return r.visits.empty(); });
        if (agg < result_.aggregate) {
            result_.aggregate = agg;
            result_.vector = v;
            result_.witness = solution;
        }
        result_.front.insert(std::move(solution), v);
    }

    Instance const& instance_;
    Weights weights_;
    OracleLimits limits_;
    std::chrono::steady_clock::time_point started_;
    std::vector<double> remaining_;
    std::vector<int> visits_;
    std::vector<double> loads_;
    Solution plan_;
    Evaluation scratch_;
    OracleResult result_;
    std::uint64_t steps_{};
};

} // namespace

auto exhaustive_best(Instance const& instance, Weights const& weights, OracleLimits const& limits) -> OracleResult
{
    if (limits.max_serving_visits == 0 || limits.max_vehicles == 0 || limits.time_budget.count() <= 0) {
        throw std::invalid_argument("oracle limits must be positive");
    }
    auto needed = required_serving_visits(instance);
    if (needed > limits.max_serving_visits) {
        throw OracleRefusal("instance needs " + std::to_string(needed) + " serving visits; oracle limit is "
            + std::to_string(limits.max_serving_visits));
    }
    return Search(instance, weights, limits).run();
}

} // namespace pdptw
