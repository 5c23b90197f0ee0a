#include "pdptw/rng.hpp"

namespace pdptw {

auto Rng::below(std::uint64_t n) -> std::uint64_t
{
    // reject the low partial bucket so every residue is equally likely
    auto const threshold = (0 - n) % n;
    for (;;) {
        auto r = next();
        if (r >= threshold) {
            return r % n;
        }
    }
}

} // namespace pdptw
