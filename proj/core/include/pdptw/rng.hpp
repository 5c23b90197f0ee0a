#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace pdptw {

/// Portable seeded stream: std::mt19937_64 (its output sequence is fixed by the standard)
/// with hand-rolled derived draws, since std distributions differ between library vendors.
class Rng {
public:
    explicit Rng(std::uint64_t seed)
        : engine_(seed)
    {
    }

    auto next() -> std::uint64_t { return engine_(); }

    /// Uniform integer in [0, n); n must be > 0.
    auto below(std::uint64_t n) -> std::uint64_t;

    /// Uniform double in [0, 1) with 53 random bits.
    auto uniform() -> double { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    auto bernoulli(double p) -> bool { return uniform() < p; }

    auto index(std::size_t n) -> std::size_t { return static_cast<std::size_t>(below(n)); }

    template <typename T>
    void shuffle(std::span<T> items)
    {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[index(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace pdptw
