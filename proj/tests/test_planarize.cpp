#include "doctest.h"

#include "glc/canonical.hpp"
#include "glc/encode.hpp"
#include "glc/predicates.hpp"
#include "glc/reduce.hpp"
#include "test_support.hpp"

using namespace glc;

TEST_CASE("already planar graphs pass through unchanged") {
    Graph k = combinator('K');
    PlanarizeResult pr = planarize(k);
    CHECK(pr.crossings == 0);
    CHECK(pr.trace.steps.empty());
    CHECK(pr.graph.node_count() == k.node_count());
}

TEST_CASE("insertions equal the drawing's crossing count") {
    Graph s = combinator('S');
    PlanarizeResult pr = planarize(s);
    CHECK(pr.crossings > 0);
    CHECK(static_cast<int>(pr.trace.steps.size()) == pr.crossings);
    for (const auto& step : pr.trace.steps) {
        CHECK(step.kind == MoveKind::Beta);
        CHECK(step.reverse);
    }
    CHECK(pr.graph.gate_count(GateKind::Lambda) ==
          s.gate_count(GateKind::Lambda) + static_cast<std::size_t>(pr.crossings));
    CHECK(is_planar_in_disk(pr.graph));
    CHECK(pr.graph.is_valid());
}

TEST_CASE("planarize handles random graphs") {
    testing::Rng rng(testing::test_seed() + 5);
    for (int i = 0; i < 25; ++i) {
        Graph g = testing::random_graph(rng, 20);
        REQUIRE(g.is_valid());
        PlanarizeResult pr = planarize(g);
        CHECK(pr.graph.is_valid());
        CHECK(is_planar_in_disk(pr.graph));
        CHECK(static_cast<int>(pr.trace.steps.size()) == pr.crossings);
    }
}

TEST_CASE("planarize is deterministic") {
    Graph s = combinator('S');
    PlanarizeResult a = planarize(s);
    PlanarizeResult b = planarize(s);
    CHECK(a.crossings == b.crossings);
    CHECK(canonical_hash(a.graph) == canonical_hash(b.graph));
}
