#include "pdptw/moo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pdptw {

auto dominates(ObjectiveVector const& a, ObjectiveVector const& b) noexcept -> bool
{
    auto const x = a.values();
    auto const y = b.values();
    bool strict = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > y[i]) {
            return false;
        }
        strict = strict || x[i] < y[i];
    }
    return strict;
}

Weights::Weights(double vehicles, double tardiness, double cost)
    : vehicles_(vehicles)
    , tardiness_(tardiness)
    , cost_(cost)
{
    for (double w : { vehicles, tardiness, cost }) {
        if (!(w >= 0) || !std::isfinite(w)) {
            throw std::invalid_argument("weights must be finite and non-negative");
        }
    }
    if (vehicles == 0 && tardiness == 0 && cost == 0) {
        throw std::invalid_argument("weights must not all be zero");
    }
}

auto aggregate(Weights const& w, ObjectiveVector const& v) noexcept -> double
{
    return w.vehicles() * v.vehicles + w.tardiness() * v.tardiness + w.cost() * v.cost;
}

auto ParetoArchive::insert(Solution solution, ObjectiveVector vector) -> bool
{
    if (std::ranges::any_of(entries_, [&](auto const& e) { return e.vector == vector || dominates(e.vector, vector); })) {
        return false;
    }
    std::erase_if(entries_, [&](auto const& e) { return dominates(vector, e.vector); });
    entries_.push_back({ std::move(solution), vector });
    if (capacity_ > 0 && entries_.size() > capacity_) {
        evict_one();
        return entries_.back().vector == vector;
    }
    return true;
}

void ParetoArchive::evict_one()
{
    std::array<double, 3> lo;
    std::array<double, 3> hi;
    lo.fill(std::numeric_limits<double>::infinity());
    hi.fill(-std::numeric_limits<double>::infinity());
    for (auto const& e : entries_) {
        auto v = e.vector.values();
        for (std::size_t k = 0; k < 3; ++k) {
            lo[k] = std::min(lo[k], v[k]);
            hi[k] = std::max(hi[k], v[k]);
        }
    }
    auto normalized_distance = [&](ObjectiveVector const& a, ObjectiveVector const& b) {
        auto x = a.values();
        auto y = b.values();
        double sum = 0;
        for (std::size_t k = 0; k < 3; ++k) {
            auto range = hi[k] - lo[k];
            if (range > 0) {
                auto d = (x[k] - y[k]) / range;
                sum += d * d;
            }
        }
        return std::sqrt(sum);
    };

    std::size_t victim = 0;
    double closest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < entries_.size(); ++j) {
            if (i != j) {
                nearest = std::min(nearest, normalized_distance(entries_[i].vector, entries_[j].vector));
            }
        }
        // ties go to the most recently inserted entry
        if (nearest <= closest) {
            closest = nearest;
            victim = i;
        }
    }
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(victim));
}

auto ParetoArchive::sorted(Weights const& w) const -> std::vector<ArchiveEntry>
{
    auto out = entries_;
    std::ranges::stable_sort(out, [&](auto const& a, auto const& b) {
        auto fa = aggregate(w, a.vector);
        auto fb = aggregate(w, b.vector);
        if (fa != fb) {
            return fa < fb;
        }
        return a.vector.values() < b.vector.values();
    });
    return out;
}

} // namespace pdptw
