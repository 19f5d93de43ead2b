#include "doctest.h"

#include "glc/encode.hpp"
#include "glc/predicates.hpp"
#include "glc/reduce.hpp"
#include "test_support.hpp"

using namespace glc;

TEST_CASE("lambda-graph membership of encoder outputs") {
    CHECK(is_lambda_graph(combinator('S')).ok);
    CHECK(is_lambda_graph(combinator('K')).ok);
    CHECK(is_lambda_graph(omega_graph()).ok);
    CHECK(is_lambda_graph(church(4)).ok);
}

TEST_CASE("dilation gates exclude a graph from lambda-graphs") {
    Graph g = crossing(GroupElem::generator("a"));
    auto r = is_lambda_graph(g);
    CHECK(!r.ok);
    CHECK(r.witness.find("dilation") != std::string::npos);
}

TEST_CASE("a bound-variable path ending outside top or the entrant fails") {
    // lambda whose p2 wire runs straight into an OUT leaf
    GraphBuilder b;
    NodeId l = b.gate(GateKind::Lambda);
    b.connect(b.in("body"), b.port(l, 1));
    b.connect(b.port(l, 2), b.out("stray"));
    b.connect(b.port(l, 3), b.out("out"));
    Graph g = b.build();
    auto r = is_lambda_graph(g);
    CHECK(!r.ok);
    REQUIRE(r.lambda_node.has_value());
    CHECK(*r.lambda_node == l);
    CHECK(r.witness.find("OUT leaf") != std::string::npos);
}

TEST_CASE("a stuck vertex without completion is reported") {
    // p2 feeds a fanout whose legs both end in OUT leaves: no Top, no return
    GraphBuilder b;
    NodeId l = b.gate(GateKind::Lambda);
    NodeId f = b.gate(GateKind::FanOut);
    b.connect(b.in("body"), b.port(l, 1));
    b.connect(b.port(l, 2), b.port(f, 1));
    b.connect(b.port(f, 2), b.out("s1"));
    b.connect(b.port(f, 3), b.out("s2"));
    b.connect(b.port(l, 3), b.out("out"));
    auto r = is_lambda_graph(b.build());
    CHECK(!r.ok);
}

TEST_CASE("face tracing satisfies the Euler identities") {
    testing::Rng rng(testing::test_seed());
    for (int i = 0; i < 30; ++i) {
        Graph g = testing::random_graph(rng, 18);
        REQUIRE(g.is_valid());
        FaceTrace ft = face_trace(g);
        // every dart in exactly one face
        std::size_t darts = 0;
        std::set<std::pair<EdgeId, bool>> seen;
        for (const auto& face : ft.faces)
            for (const Dart& d : face) {
                darts++;
                CHECK(seen.insert({d.edge, d.at_src}).second);
            }
        CHECK(darts == 2 * g.edges().size());
        CHECK(ft.genus >= 0);
    }
}

TEST_CASE("disk planarity of the small library graphs") {
    CHECK(is_planar_in_disk(combinator('I')));
    CHECK(is_planar_in_disk(combinator('K')));
    CHECK(is_planar_in_disk(church(0)));
    CHECK(is_planar_in_disk(church(2)));
    CHECK(is_planar_in_disk(church(3)));
    CHECK(is_planar_in_disk(crossing(GroupElem::generator("a"))));

    // K's graph is even rotation-planar as stored
    CHECK(face_trace(combinator('K')).rotation_planar);
    CHECK(face_trace(combinator('K')).genus == 0);

    // a single top on an IN leaf
    GraphBuilder b;
    NodeId t = b.gate(GateKind::Top);
    b.connect(b.in("x"), b.port(t, 1));
    CHECK(is_planar_in_disk(b.build()));
}

TEST_CASE("the S combinator contains a K3,3 minor and is not disk planar") {
    Graph s = combinator('S');
    CHECK(is_lambda_graph(s).ok);
    CHECK(!is_planar_in_disk(s));
    CHECK(face_trace(s).genus == 1);
    // planarization repairs it
    PlanarizeResult pr = planarize(s);
    CHECK(pr.crossings > 0);
    CHECK(is_planar_in_disk(pr.graph));
}

TEST_CASE("two disjoint wires embed in a disk whatever the leaf order") {
    GraphBuilder b;
    b.connect(b.in("i1"), b.out("o1"));
    b.connect(b.in("i2"), b.out("o2"));
    Graph g = b.build();
    CHECK(is_planar_in_disk(g));
    FaceTrace ft = face_trace(g);
    CHECK(ft.genus == 0);
}

TEST_CASE("oriented reachability") {
    Graph g = encode(parse_term("\\x.x y"));
    // the lambda node and the app node
    NodeId lam = 0, app = 0;
    for (const auto& [nid, node] : g.nodes()) {
        if (node.gate.kind == GateKind::Lambda) lam = nid;
        if (node.gate.kind == GateKind::App) app = nid;
    }
    CHECK(has_oriented_path(g, lam, lam)); // empty path
    CHECK(has_oriented_path(g, lam, app)); // p2 wire feeds the application
    CHECK(has_oriented_path(g, app, lam));
    CHECK(!has_oriented_path(g, app, lam, {lam}));
    CHECK(!has_oriented_path(g, app, lam, {app}));
}
