#include <doctest.h>

#include "pdptw/moo.hpp"
#include "test_support.hpp"

using namespace pdptw;
using namespace pdptw::testing;

namespace {

auto random_vector(Rng& rng) -> ObjectiveVector
{
    // small integer grid so ties and equal vectors actually occur
    return { static_cast<double>(integer(rng, 0, 3)), static_cast<double>(integer(rng, 0, 4)),
        static_cast<double>(integer(rng, 0, 5)) };
}

auto naive_dominates(ObjectiveVector const& a, ObjectiveVector const& b) -> bool
{
    auto x = a.values();
    auto y = b.values();
    bool strict = false;
    for (int i = 0; i < 3; ++i) {
        if (x[i] > y[i]) {
            return false;
        }
        strict = strict || x[i] < y[i];
    }
    return strict;
}

} // namespace

TEST_CASE("dominance basics")
{
    CHECK(dominates({ 1, 0, 5 }, { 1, 0, 6 }));
    CHECK_FALSE(dominates({ 1, 0, 5 }, { 1, 0, 5 }));
    CHECK_FALSE(dominates({ 1, 1, 5 }, { 2, 0, 5 }));
    CHECK_FALSE(dominates({ 2, 0, 5 }, { 1, 1, 5 }));
}

TEST_CASE("weights")
{
    CHECK(aggregate(Weights(2, 1, 0.5), { 1, 10, 100 }) == doctest::Approx(62));
    CHECK(aggregate(Weights{}, { 1, 2, 20 }) == doctest::Approx(23));
    CHECK_THROWS_AS(Weights(-1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(Weights(0, 0, 0), std::invalid_argument);
    CHECK_NOTHROW(Weights(0, 0, 1));
}

TEST_CASE("property: dominance is a strict partial order that the aggregate respects")
{
    Rng rng(11);
    for (int i = 0; i < 3000; ++i) {
        auto a = random_vector(rng);
        auto b = random_vector(rng);
        auto c = random_vector(rng);
        CHECK(dominates(a, b) == naive_dominates(a, b));
        CHECK_FALSE(dominates(a, a));
        CHECK_FALSE((dominates(a, b) && dominates(b, a)));
        if (dominates(a, b) && dominates(b, c)) {
            CHECK(dominates(a, c));
        }
        Weights w(uniform(rng, 0.01, 5), uniform(rng, 0.01, 5), uniform(rng, 0.01, 5));
        if (dominates(a, b)) {
            CHECK(aggregate(w, a) < aggregate(w, b));
        }
    }
}

TEST_CASE("archive keeps a mutually non-dominated set")
{
    ParetoArchive archive;
    CHECK(archive.insert(Solution{}, { 2, 0, 10 }));
    CHECK_FALSE(archive.insert(Solution{}, { 2, 0, 10 }));
    CHECK_FALSE(archive.insert(Solution{}, { 2, 1, 10 }));
    CHECK(archive.insert(Solution{}, { 1, 5, 10 }));
    CHECK(archive.insert(Solution{}, { 1, 0, 10 }));
    REQUIRE(archive.size() == 1);
    CHECK(archive.entries()[0].vector == ObjectiveVector{ 1, 0, 10 });
}

TEST_CASE("property: archive contents after random insertion")
{
    Rng rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        ParetoArchive archive;
        std::vector<ObjectiveVector> seen;
        for (int i = 0; i < 40; ++i) {
            auto v = random_vector(rng);
            seen.push_back(v);
            archive.insert(Solution{}, v);
        }
        for (auto const& x : archive.entries()) {
            for (auto const& y : archive.entries()) {
                CHECK_FALSE(dominates(x.vector, y.vector));
            }
        }
        // exactly the non-dominated distinct vectors survive
        std::vector<ObjectiveVector> expected;
        for (auto const& v : seen) {
            bool dominated = std::ranges::any_of(seen, [&](auto const& o) { return dominates(o, v); });
            if (!dominated && std::ranges::find(expected, v) == expected.end()) {
                expected.push_back(v);
            }
        }
        CHECK(archive.size() == expected.size());
    }
}

TEST_CASE("bounded archive")
{
    Rng rng(13);
    ParetoArchive archive(4);
    for (int i = 0; i < 30; ++i) {
        double t = i;
        archive.insert(Solution{}, { 1, t, 100 - t });
        CHECK(archive.size() <= 4);
    }
    CHECK(archive.size() == 4);
    for (auto const& x : archive.entries()) {
        for (auto const& y : archive.entries()) {
            CHECK_FALSE(dominates(x.vector, y.vector));
        }
    }
    // ties evict the most recent entry, so the first point survives
    auto sorted = archive.sorted(Weights(1, 1, 0));
    CHECK(sorted.front().vector.tardiness == 0);
}

TEST_CASE("sorted orders by aggregate then vector")
{
    ParetoArchive archive;
    archive.insert(Solution{}, { 1, 4, 0 });
    archive.insert(Solution{}, { 2, 0, 3 });
    archive.insert(Solution{}, { 1, 0, 4 });
    auto s = archive.sorted(Weights{});
    REQUIRE(s.size() == 3);
    CHECK(s[0].vector == ObjectiveVector{ 1, 0, 4 });
    CHECK(s[1].vector == ObjectiveVector{ 1, 4, 0 });
    CHECK(s[2].vector == ObjectiveVector{ 2, 0, 3 });
}
