#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pdptw/evaluation.hpp"
#include "pdptw/moo.hpp"
#include "pdptw/rng.hpp"

namespace pdptw {

struct GaConfig {
    std::size_t population{ 64 };
    std::size_t generations{ 500 };
    double crossover_rate{ 0.9 };
    double mutation_rate{ 0.2 };
    std::size_t tournament{ 3 };
    std::size_t elites{ 1 };
    std::uint64_t seed{ 0 };
    Weights weights{};
    std::size_t stagnation_limit{ 0 }; // 0 disables early stop
    std::size_t archive_capacity{ 0 }; // 0 = unbounded
    std::size_t threads{ 1 };          // fitness evaluation workers; never changes results

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct Fitness {
    ObjectiveVector vector;
    double aggregate{};
    bool feasible{};
};

/// Direct per-vehicle encoding: one visit sequence per fleet vehicle, in fleet order.
class Chromosome {
public:
    Chromosome() = default;
    /// Places each route on its vehicle slot; throws std::invalid_argument on unknown or repeated vehicles.
    Chromosome(Instance const& instance, Solution const& solution);

    static auto empty(Instance const& instance) -> Chromosome;

    [[nodiscard]] auto solution() const noexcept -> Solution const& { return solution_; }
    /// Mutable access; drops the cached fitness.
    auto edit() -> Solution&
    {
        fitness_.reset();
        return solution_;
    }

    [[nodiscard]] auto fitness() const noexcept -> std::optional<Fitness> const& { return fitness_; }
    void set_fitness(Fitness f) { fitness_ = f; }

    [[nodiscard]] auto visit_count() const noexcept -> std::size_t;

    friend auto operator==(Chromosome const& a, Chromosome const& b) -> bool { return a.solution_ == b.solution_; }

private:
    Solution solution_;
    std::optional<Fitness> fitness_;
};

/// The fleet cannot serve the instance under any plan, or no individual survived repair.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

auto assess(Instance const& instance, Solution const& solution, Weights const& weights) -> Fitness;

/// Drops visits whose transfer is zero.
auto strip_pass_through(Instance const& instance, Chromosome chromosome) -> Chromosome;

/// Fixes precedence, capacity and coverage one violation at a time until the hard families
/// pass. A chromosome that already passes is returned unchanged. std::nullopt when the pass
/// limit runs out.
auto repair(Instance const& instance, Chromosome chromosome) -> std::optional<Chromosome>;

auto init_population(Instance const& instance, GaConfig const& config, Rng& rng) -> std::vector<Chromosome>;

auto crossover(Chromosome const& parent_a, Chromosome const& parent_b, Instance const& instance, Rng& rng)
    -> std::pair<Chromosome, Chromosome>;

/// One of {intra-route swap, relocate, merge routes}, uniformly, then repair.
auto mutate(Chromosome const& chromosome, Instance const& instance, GaConfig const& config, Rng& rng) -> Chromosome;

struct SolveResult {
    Solution best;
    ObjectiveVector vector;
    double aggregate{};
    ParetoArchive front;
    std::vector<double> history; // population best per generation, initial population first
    std::uint64_t evaluations{};
    GaConfig config;
};

auto evolve(Instance const& instance, GaConfig const& config) -> SolveResult;

/// Removes routes without visits (output form of a chromosome).
auto without_empty_routes(Solution solution) -> Solution;

} // namespace pdptw
