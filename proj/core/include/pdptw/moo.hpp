#pragma once

#include <cstddef>
#include <vector>

#include "pdptw/evaluation.hpp"

namespace pdptw {

/// a is no worse than b on every criterion and strictly better on at least one.
auto dominates(ObjectiveVector const& a, ObjectiveVector const& b) noexcept -> bool;

/// Non-negative, not-all-zero weighting/scaling coefficients for the linear aggregate.
class Weights {
public:
    Weights() = default;
    Weights(double vehicles, double tardiness, double cost);

    [[nodiscard]] auto vehicles() const noexcept -> double { return vehicles_; }
    [[nodiscard]] auto tardiness() const noexcept -> double { return tardiness_; }
    [[nodiscard]] auto cost() const noexcept -> double { return cost_; }

    friend auto operator==(Weights const&, Weights const&) -> bool = default;

private:
    double vehicles_{ 1.0 };
    double tardiness_{ 1.0 };
    double cost_{ 1.0 };
};

auto aggregate(Weights const& w, ObjectiveVector const& v) noexcept -> double;

struct ArchiveEntry {
    Solution solution;
    ObjectiveVector vector;
};

/// Mutually non-dominated (solution, vector) set. Candidates equal to an existing vector are
/// rejected. With a capacity bound, overflow evicts the entry closest to its nearest neighbour
/// in range-normalized objective space.
class ParetoArchive {
public:
    explicit ParetoArchive(std::size_t capacity = 0)
        : capacity_(capacity)
    {
    }

    /// Returns true when the candidate is kept.
    auto insert(Solution solution, ObjectiveVector vector) -> bool;
    auto insert(ArchiveEntry entry) -> bool { return insert(std::move(entry.solution), entry.vector); }

    [[nodiscard]] auto entries() const noexcept -> std::vector<ArchiveEntry> const& { return entries_; }
    [[nodiscard]] auto size() const noexcept -> std::size_t { return entries_.size(); }
    [[nodiscard]] auto empty() const noexcept -> bool { return entries_.empty(); }
    [[nodiscard]] auto capacity() const noexcept -> std::size_t { return capacity_; }

    /// Entries ordered by aggregate ascending, ties broken by vector lexicographically.
    [[nodiscard]] auto sorted(Weights const& w) const -> std::vector<ArchiveEntry>;

private:
    void evict_one();

    std::size_t capacity_;
    std::vector<ArchiveEntry> entries_;
};

} // namespace pdptw
