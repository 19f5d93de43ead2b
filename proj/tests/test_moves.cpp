#include "doctest.h"

#include "glc/canonical.hpp"
#include "glc/encode.hpp"
#include "glc/moves.hpp"
#include "glc/reduce.hpp"
#include "test_support.hpp"

using namespace glc;

namespace {

Graph lone_dil(const char* label) {
    GraphBuilder b;
    NodeId d = b.gate(GateKind::Dil, GroupElem::parse(label));
    b.connect(b.in("x"), b.port(d, 1));
    b.connect(b.in("y"), b.port(d, 2));
    b.connect(b.port(d, 3), b.out("out"));
    return b.build();
}

bool leaves_equal(const Graph& a, const Graph& b) {
    if (a.in_leaves().size() != b.in_leaves().size()) return false;
    if (a.out_leaves().size() != b.out_leaves().size()) return false;
    for (std::size_t i = 0; i < a.in_leaves().size(); ++i)
        if (a.in_leaves()[i].name != b.in_leaves()[i].name) return false;
    for (std::size_t i = 0; i < a.out_leaves().size(); ++i)
        if (a.out_leaves()[i].name != b.out_leaves()[i].name) return false;
    return true;
}

} // namespace

TEST_CASE("finding beta redexes") {
    Graph redex = encode(parse_term("(\\x.x) y"));
    CHECK(find_matches(redex, MoveKind::Beta).size() == 1);

    GraphBuilder b;
    NodeId t = b.gate(GateKind::Top);
    b.connect(b.in("x"), b.port(t, 1));
    CHECK(find_matches(b.build(), MoveKind::Beta).empty());

    // the omega example has exactly one redex
    CHECK(find_matches(omega_graph(), MoveKind::Beta).size() == 1);
}

TEST_CASE("beta on an identity application unwraps the argument") {
    Graph g = compose_app(combinator('I'), combinator('K'));
    auto ms = find_matches(g, MoveKind::Beta);
    REQUIRE(ms.size() == 1);
    ApplyResult r = apply(g, ms.front());
    CHECK(is_isomorphic(r.graph, combinator('K')));
    CHECK(leaves_equal(r.graph, g));
}

TEST_CASE("moves preserve validity and the leaf interface") {
    Graph g = compose_app(compose_app(combinator('S'), combinator('K')), combinator('K'));
    Graph cur = g;
    for (int step = 0; step < 20; ++step) {
        bool applied = false;
        for (MoveKind k : Strategy::lambda_default().kinds) {
            auto ms = find_matches(cur, k);
            if (ms.empty()) continue;
            ApplyResult r = apply(cur, ms.front());
            CHECK(r.graph.is_valid());
            CHECK(leaves_equal(r.graph, g));
            cur = std::move(r.graph);
            applied = true;
            break;
        }
        if (!applied) break;
    }
}

TEST_CASE("beta forward then reverse on the created wires is the identity") {
    testing::Rng rng(testing::test_seed());
    int done = 0;
    while (done < 40) {
        int fresh = 0;
        TermPtr body = testing::random_term(rng, 5, {"x"}, &fresh);
        if (body->kind == TermKind::Var) continue; // degenerate chain, wires merge
        TermPtr arg = testing::random_closed_term(rng, 4);
        Graph g = encode(Term::app(Term::lam("x", body), arg));
        auto ms = find_matches(g, MoveKind::Beta);
        REQUIRE(!ms.empty());
        ApplyResult fwd = apply(g, ms.front());
        if (fwd.created_edges.size() != 2) continue; // chained through the pattern
        MoveInstance rev{MoveKind::Beta, true, {}, {fwd.created_edges[0], fwd.created_edges[1]}, 0};
        ApplyResult back = apply(fwd.graph, rev);
        CHECK(is_isomorphic(back.graph, g));
        ++done;
    }
}

TEST_CASE("co-comm is an involution and co-assoc rotates back") {
    Graph g = encode(parse_term("\\x.(x x) x"));
    auto fans = find_matches(g, MoveKind::CoComm);
    REQUIRE(!fans.empty());
    Graph once = apply(g, fans.front()).graph;
    CHECK(!is_isomorphic(once, g));
    Graph twice = apply(once, find_matches(once, MoveKind::CoComm).front()).graph;
    CHECK(is_isomorphic(twice, g));

    // left comb has a forward rotation; undoing it restores the graph
    Graph left = encode(parse_term("\\x.(x x) x"), FanOutPolicy::LeftComb);
    auto rot = find_matches(left, MoveKind::CoAssoc);
    REQUIRE(!rot.empty());
    Graph rotated = apply(left, rot.front()).graph;
    auto back = find_matches(rotated, MoveKind::CoAssoc, true);
    REQUIRE(!back.empty());
    CHECK(is_isomorphic(apply(rotated, back.front()).graph, left));
}

TEST_CASE("ext2 erases an identity dilation") {
    Graph g = lone_dil("1");
    auto ms = find_matches(g, MoveKind::Ext2);
    REQUIRE(ms.size() == 1);
    ApplyResult r = apply(g, ms.front());
    // wire IN y -> OUT plus a fresh top capping IN x
    CHECK(r.graph.gate_count(GateKind::Dil) == 0);
    CHECK(r.graph.gate_count(GateKind::Top) == 1);
    Wiring w(r.graph);
    auto wire = w.edge_from(Endpoint::in_leaf(1));
    REQUIRE(wire);
    CHECK(r.graph.edge(*wire).dst.kind == EndKind::OutLeaf);

    CHECK(find_matches(lone_dil("a"), MoveKind::Ext2).empty());
}

TEST_CASE("r1 collapses a fanout feeding both dilation operands") {
    Graph g = encode_lambda_scale(parse_term("u ~{a^2} u"));
    auto ms = find_matches(g, MoveKind::R1);
    REQUIRE(ms.size() == 1);
    Graph r = apply(g, ms.front()).graph;
    CHECK(is_isomorphic(r, encode_lambda_scale(parse_term("u"))));
}

TEST_CASE("r2 composes dilation labels") {
    Graph g = encode_lambda_scale(parse_term("u ~{a} (u ~{b^-1} v)"));
    auto ms = find_matches(g, MoveKind::R2);
    REQUIRE(ms.size() == 1);
    Graph r = apply(g, ms.front()).graph;
    CHECK(is_isomorphic(r, encode_lambda_scale(parse_term("u ~{a*b^-1} v"))));

    // inverses compose to the identity label
    Graph h = encode_lambda_scale(parse_term("u ~{a} (u ~{a^-1} v)"));
    Graph rh = apply(h, find_matches(h, MoveKind::R2).front()).graph;
    bool has_identity_dil = false;
    for (const auto& [nid, node] : rh.nodes())
        if (node.gate.kind == GateKind::Dil && node.gate.dil_label.is_identity())
            has_identity_dil = true;
    CHECK(has_identity_dil);
}

TEST_CASE("ext1 is eta reduction with a side condition") {
    Graph g = encode(parse_term("\\x.b x"));
    auto ms = find_matches(g, MoveKind::Ext1);
    REQUIRE(ms.size() == 1);
    Graph r = apply(g, ms.front()).graph;
    CHECK(is_isomorphic(r, encode(parse_term("b"))));

    // x free in the body blocks the pattern itself (the variable fans out)
    Graph h = encode(parse_term("\\x.(x b) x"));
    CHECK(find_matches(h, MoveKind::Ext1).empty());
}

TEST_CASE("local pruning eliminates dead fanout legs") {
    // SUCC church(0) leaves a fanout leg on a top after three betas
    Graph g = compose_app(succ_graph(), church(0));
    SequenceResult seq = apply_sequence(g, {MoveKind::Beta}, 10);
    Graph after = seq.graph;
    auto ms = find_matches(after, MoveKind::PruneLocalFanOut);
    REQUIRE(ms.size() == 1);
    Graph pruned = apply(after, ms.front()).graph;
    CHECK(is_isomorphic(pruned, church(1)));
}

TEST_CASE("app pruning caps both inputs") {
    GraphBuilder b;
    NodeId c = b.gate(GateKind::App);
    NodeId t = b.gate(GateKind::Top);
    b.connect(b.in("x"), b.port(c, 1));
    b.connect(b.in("y"), b.port(c, 2));
    b.connect(b.port(c, 3), b.port(t, 1));
    Graph g = b.build();
    auto ms = find_matches(g, MoveKind::PruneLocalApp);
    REQUIRE(ms.size() == 1);
    Graph r = apply(g, ms.front()).graph;
    CHECK(r.gate_count(GateKind::App) == 0);
    CHECK(r.gate_count(GateKind::Top) == 2);
}

TEST_CASE("global pruning erases a dead closed subgraph") {
    // K S K reduces with one global pruning of the unused argument
    Graph g = compose_app(compose_app(combinator('K'), combinator('S')), combinator('K'));
    SequenceResult seq = apply_sequence(g, {MoveKind::Beta}, 10);
    // both the capping top and the top inside the dead argument anchor it
    auto ms = find_matches(seq.graph, MoveKind::PruneGlobal);
    REQUIRE(!ms.empty());
    Graph r = apply(seq.graph, ms.front()).graph;
    CHECK(is_isomorphic(r, combinator('S')));
}

TEST_CASE("global fanout duplicates a bottlenecked subgraph") {
    Graph omega = omega_graph();
    Graph shared = apply(omega, find_matches(omega, MoveKind::Beta).front()).graph;
    auto ms = find_matches(shared, MoveKind::FanOutGlobal);
    REQUIRE(ms.size() == 1);
    Graph back = apply(shared, ms.front()).graph;
    CHECK(is_isomorphic(back, omega));
}

TEST_CASE("reverse fanout merges identical hanging subgraphs") {
    // (A C) (B C) with identical closed boxes C merges back to a bottleneck
    Graph c1 = box_graph(GroupElem::generator("c"));
    Graph g = compose_app(compose_app(box_graph(GroupElem::generator("a")), c1),
                          compose_app(box_graph(GroupElem::generator("b")), c1));
    FindOptions opts;
    opts.include_expansive = true;
    auto ms = find_matches(g, MoveKind::FanOutGlobal, true, opts);
    REQUIRE(!ms.empty());
    Graph merged = apply(g, ms.front()).graph;
    // one shared copy replaces the two: a box disappears, a fanout arrives
    CHECK(merged.node_count() == g.node_count() - 2);
    CHECK(merged.gate_count(GateKind::FanOut) == g.gate_count(GateKind::FanOut));
    // forward fanout restores the original
    auto fwd = find_matches(merged, MoveKind::FanOutGlobal);
    REQUIRE(!fwd.empty());
    CHECK(is_isomorphic(apply(merged, fwd.front()).graph, g));
}

TEST_CASE("beta reverse inserts a pair that undoes forward") {
    GraphBuilder b;
    b.connect(b.in("p"), b.out("q"));
    b.connect(b.in("r"), b.out("s"));
    Graph g = b.build();
    std::vector<EdgeId> eids;
    for (const auto& [eid, e] : g.edges()) eids.push_back(eid);
    MoveInstance rev{MoveKind::Beta, true, {}, {eids[0], eids[1]}, 0};
    Graph expanded = apply(g, rev).graph;
    CHECK(expanded.gate_count(GateKind::Lambda) == 1);
    CHECK(expanded.gate_count(GateKind::App) == 1);
    auto fwd = find_matches(expanded, MoveKind::Beta);
    REQUIRE(fwd.size() == 1);
    CHECK(is_isomorphic(apply(expanded, fwd.front()).graph, g));
}

TEST_CASE("apply_sequence respects budgets and empty kind lists") {
    Graph omega = omega_graph();
    SequenceResult none = apply_sequence(omega, {}, 100);
    CHECK(none.trace.steps.empty());
    CHECK(is_isomorphic(none.graph, omega));

    SequenceResult zero = apply_sequence(omega, {MoveKind::Beta}, 0);
    CHECK(zero.trace.steps.empty());
    CHECK(zero.trace.budget_exhausted);

    CHECK_THROWS_AS(apply_sequence(omega, {MoveKind::Beta}, -1), GlcError);
}

TEST_CASE("stale instances are rejected") {
    Graph g = compose_app(combinator('I'), combinator('I'));
    auto ms = find_matches(g, MoveKind::Beta);
    REQUIRE(!ms.empty());
    Graph reduced = apply(g, ms.front()).graph;
    CHECK_THROWS_WITH_AS(apply(reduced, ms.front()), doctest::Contains("stale"), GlcError);
}

TEST_CASE("loop elimination as an explicit move") {
    Graph g;
    EdgeId loop = g.add_free_loop();
    auto ms = find_matches(g, MoveKind::LoopElim);
    REQUIRE(ms.size() == 1);
    CHECK(ms.front().edges.front() == loop);
    Graph r = apply(g, ms.front()).graph;
    CHECK(r.edges().empty());
}

TEST_CASE("trace formatting is line oriented") {
    Graph g = compose_app(combinator('I'), combinator('K'));
    SequenceResult seq = apply_sequence(g, {MoveKind::Beta}, 10, true);
    std::string text = seq.trace.format();
    CHECK(text.find("step 1 beta forward nodes=") == 0);
    CHECK(text.find("hash=") != std::string::npos);
}
