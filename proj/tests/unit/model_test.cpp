#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pdptw/model.hpp"
#include "test_support.hpp"

using namespace pdptw;
using namespace pdptw::testing;

namespace {

auto expect_parse_error(std::string const& text, std::size_t line, std::string const& fragment)
{
    try {
        (void)parse_instance(text);
        FAIL("expected a parse error");
    } catch (ParseError const& e) {
        CHECK(e.line() == line);
        CHECK_MESSAGE(e.reason().find(fragment) != std::string::npos, e.what());
    }
}

constexpr auto kDepotOnly = "PDPTW 1\nVEHICLES 1\nV 1 10 1 1\nNODES 1\nN 0 0 0 0 0 100 0 - -\n";

} // namespace

TEST_CASE("bundled instance parses with its tabulated fields")
{
    auto inst = paper_instance();
    CHECK(inst.size() == 17);
    CHECK(inst.node(0).e == 0);
    CHECK(inst.node(0).l == 200);
    CHECK(inst.node(1).pred == std::vector<NodeId>{ 2, 9 });
    CHECK(inst.node(4).succ == std::vector<NodeId>{ 3, 7 });
    CHECK(inst.node(11).pred == std::vector<NodeId>{ 10, 16 });
    CHECK(inst.node(11).succ.empty());
    CHECK(inst.vehicles().size() == 1);
    CHECK(inst.vehicle(1).capacity == 100);
}

TEST_CASE("depot-only file is a degenerate instance")
{
    auto inst = parse_instance(kDepotOnly);
    CHECK(inst.size() == 1);
    CHECK(inst.precedence_pairs().empty());
}

TEST_CASE("parse errors name the line and reason")
{
    std::string const head = "PDPTW 1\nVEHICLES 1\nV 1 10 1 1\nNODES 4\nN 0 0 0 0 0 100 0 - -\n";
    SUBCASE("dangling reference")
    {
        expect_parse_error(head + "N 1 1 1 5 0 10 0 3 -\nN 2 2 2 5 0 10 0 - -\nN 3 3 3 -5 0 10 0 - 99\n", 8, "unknown node 99");
    }
    SUBCASE("malformed number")
    {
        expect_parse_error(head + "N 1 1 abc 5 0 10 0 - -\n", 6, "malformed y");
    }
    SUBCASE("wrong field count")
    {
        expect_parse_error(head + "N 1 1 1 5 0 10 0 -\n", 6, "expects 9 fields");
    }
    SUBCASE("duplicate id")
    {
        expect_parse_error(head + "N 1 1 1 5 0 10 0 - -\nN 1 2 2 5 0 10 0 - -\n", 7, "duplicate node id 1");
    }
    SUBCASE("negative service time")
    {
        expect_parse_error(head + "N 1 1 1 5 0 10 -2 - -\n", 6, "negative service");
    }
    SUBCASE("inverted window")
    {
        expect_parse_error(head + "N 1 1 1 5 20 10 0 - -\n", 6, "e > close l");
    }
    SUBCASE("missing depot")
    {
        expect_parse_error("PDPTW 1\nNODES 1\nN 1 0 0 5 0 100 0 - -\n", 3, "outside 0..0");
        expect_parse_error("PDPTW 1\nNODES 2\nN 1 0 0 5 0 100 0 - -\nN 1 0 0 5 0 100 0 - -\n", 4, "duplicate");
        CHECK_THROWS_WITH_AS(Instance({ make_node(1, 0, 0, 5, 0, 10, 0) }, {}), "missing depot (node 0)", ModelError);
    }
    SUBCASE("bad header")
    {
        expect_parse_error("# comment\nPDPTW 2\n", 2, "header");
    }
    SUBCASE("count mismatch")
    {
        expect_parse_error(head, 4, "declares 4 nodes, found 1");
    }
}

TEST_CASE("same-sign link is a model error naming both nodes")
{
    std::string text = "PDPTW 1\nNODES 3\nN 0 0 0 0 0 100 0 - -\nN 1 1 1 5 0 10 0 2 -\nN 2 2 2 5 0 10 0 - -\n";
    try {
        (void)parse_instance(text);
        FAIL("expected a model error");
    } catch (ModelError const& e) {
        std::string what = e.what();
        CHECK(what.find("1") != std::string::npos);
        CHECK(what.find("2") != std::string::npos);
        CHECK(what.find("supplier/client") != std::string::npos);
    }
}

TEST_CASE("distance is Euclidean unless overridden")
{
    auto inst = paper_instance();
    // sqrt(57^2 + 26^2) = sqrt(3925)
    CHECK(*inst.distance(0, 1) == doctest::Approx(std::sqrt(3925.0)).epsilon(1e-12));
    CHECK(*inst.distance(0, 1) == doctest::Approx(62.6498).epsilon(1e-6));
    for (auto const& n : inst.nodes()) {
        CHECK(*inst.distance(n.id, n.id) == 0);
    }

    Instance withEdge({ depot(), make_node(1, 0, 3, 5, 0, 10, 0), make_node(2, 4, 0, -5, 0, 10, 0) }, { { 1, 10, 1, 2 } },
        { { 1, 2, Length{} }, { 0, 2, Length{ 7.5 } }, { 2, 0, Length{ 9 } } });
    CHECK_FALSE(withEdge.distance(1, 2).has_value());
    CHECK_FALSE(withEdge.distance(2, 1).has_value()); // mirrored
    CHECK(*withEdge.distance(0, 2) == 7.5);
    CHECK(*withEdge.distance(2, 0) == 9); // explicit reverse wins
    CHECK(*withEdge.distance(0, 1) == 3);
}

TEST_CASE("travel time divides by vehicle speed and propagates absent edges")
{
    Instance inst({ depot(), make_node(1, 10, 0, 5, 0, 10, 0), make_node(2, 0, 5, -5, 0, 10, 0) },
        { { 1, 10, 1, 1 }, { 2, 10, 1, 2 } }, { { 1, 2, Length{} } });
    CHECK(*inst.travel_time(1, 0, 1) == 10);
    CHECK(*inst.travel_time(2, 0, 1) == 5);
    CHECK_FALSE(inst.travel_time(2, 1, 2).has_value());

    auto paper = paper_instance();
    CHECK(*paper.travel_time(1, 0, 1) == doctest::Approx(62.6498).epsilon(1e-6));
}

TEST_CASE("precedence pairs are the oriented union of Succ/Pred")
{
    auto inst = paper_instance();
    auto pairs = derive_precedence_pairs(inst);
    auto has = [&](NodeId s, NodeId c) { return std::ranges::find(pairs, PrecedencePair{ s, c }) != pairs.end(); };
    for (auto [s, c] : std::vector<std::pair<int, int>>{ { 2, 1 }, { 9, 1 }, { 4, 3 }, { 4, 7 }, { 5, 6 }, { 8, 12 }, { 13, 12 }, { 14, 15 } }) {
        CHECK_MESSAGE(has(s, c), s << "->" << c);
    }
    // node 11's row disagrees with rows 10 and 16, the union still recovers both links
    CHECK(has(11, 10));
    CHECK(has(11, 16));
    CHECK(pairs.size() == 10);
    for (auto const& p : pairs) {
        CHECK(inst.node(p.supplier).q > 0);
        CHECK(inst.node(p.client).q < 0);
    }
    CHECK(inst.suppliers_of(1).size() == 2);
    CHECK(inst.suppliers_of(12).size() == 2);

    CHECK(derive_precedence_pairs(synthetic_pc()).size() == 1);
    CHECK(derive_precedence_pairs(all_zero_instance()).empty());
}

TEST_CASE("reciprocity mismatches are warnings around node 11")
{
    auto warnings = reciprocity_warnings(paper_instance());
    REQUIRE_FALSE(warnings.empty());
    for (auto const& w : warnings) {
        CHECK(w.find("11") != std::string::npos);
    }
}

TEST_CASE("property: distance symmetric with triangle inequality on random coordinates")
{
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto inst = random_instance(rng, 8, 1);
        for (NodeId i = 0; i < 8; ++i) {
            for (NodeId j = 0; j < 8; ++j) {
                CHECK(*inst.distance(i, j) == *inst.distance(j, i));
                for (NodeId k = 0; k < 8; ++k) {
                    CHECK(*inst.distance(i, k) <= *inst.distance(i, j) + *inst.distance(j, k) + 1e-9);
                }
            }
        }
    }
}

TEST_CASE("property: parse(serialize(x)) == x")
{
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        auto inst = random_instance(rng, 2 + rng.index(10), 1 + rng.index(3));
        auto text = serialize_instance(inst);
        CHECK(parse_instance(text) == inst);
    }
    auto paper = paper_instance();
    CHECK(parse_instance(serialize_instance(paper)) == paper);

    Instance withEdge({ depot(), make_node(1, 0, 3, 5, 0, 10, 0) }, { { 1, 10, 1, 1 } }, { { 0, 1, Length{} }, { 1, 0, Length{ 2.25 } } });
    CHECK(parse_instance(serialize_instance(withEdge)) == withEdge);
}
