#include "doctest.h"

#include "glc/graph.hpp"

using namespace glc;

TEST_CASE("group elements form a free abelian group") {
    GroupElem a = GroupElem::generator("a");
    GroupElem b = GroupElem::generator("b");
    CHECK(GroupElem::identity().is_identity());
    CHECK((a * a.inverse()).is_identity());
    CHECK(a * b == b * a);
    CHECK((a * a * b.inverse()).str() == "a^2*b^-1");
    CHECK(GroupElem::parse("a^2*b^-1") == a * a * b.inverse());
    CHECK(GroupElem::parse("1").is_identity());
    CHECK(GroupElem::parse("a*b") == a * b);
    CHECK_THROWS_AS(GroupElem::parse("2a"), GlcError);
    CHECK_THROWS_AS(GroupElem::parse(""), GlcError);
}

TEST_CASE("smallest legal graph: one top gate wired to an IN leaf") {
    GraphBuilder b;
    NodeId t = b.gate(GateKind::Top);
    b.connect(b.in("x"), b.port(t, 1));
    Graph g = b.build();
    CHECK(g.node_count() == 1);
    CHECK(g.edges().size() == 1);
    CHECK(g.is_valid());
}

TEST_CASE("identity graph: lambda with a self wire") {
    GraphBuilder b;
    NodeId l = b.gate(GateKind::Lambda);
    b.connect(b.port(l, 2), b.port(l, 1));
    b.connect(b.port(l, 3), b.out("out"));
    Graph g = b.build();
    CHECK(g.is_valid());
    CHECK(g.gate_count(GateKind::Lambda) == 1);
}

TEST_CASE("orientation mismatch is rejected") {
    GraphBuilder b;
    NodeId l = b.gate(GateKind::Lambda);
    NodeId c = b.gate(GateKind::App);
    b.connect(b.port(l, 1), b.port(c, 1)); // in-port wired as a source
    b.connect(b.port(l, 2), b.port(c, 2));
    b.connect(b.port(l, 3), b.out("out"));
    b.connect(b.port(c, 3), b.port(l, 1));
    CHECK_THROWS_WITH_AS(b.build(), doctest::Contains("orientation mismatch"), GlcError);
}

TEST_CASE("unwired ports are reported with the offending node") {
    Graph g;
    NodeId l = g.add_node(Gate{GateKind::Lambda, {}});
    std::uint32_t out = g.add_out_leaf("out");
    g.add_edge(Endpoint::node_port(l, 3), Endpoint::out_leaf(out));
    g.add_edge(Endpoint::node_port(l, 2), Endpoint::node_port(l, 1));
    CHECK(g.validate().empty());

    Graph h;
    NodeId l2 = h.add_node(Gate{GateKind::Lambda, {}});
    std::uint32_t out2 = h.add_out_leaf("out");
    h.add_edge(Endpoint::node_port(l2, 3), Endpoint::out_leaf(out2));
    auto vs = h.validate();
    REQUIRE(!vs.empty());
    bool found = false;
    for (const auto& v : vs)
        if (v.message.find("unwired port") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("a port cannot be used twice") {
    Graph g;
    NodeId t = g.add_node(Gate{GateKind::Top, {}});
    g.add_in_leaf("x");
    g.add_in_leaf("y");
    g.add_edge(Endpoint::in_leaf(0), Endpoint::node_port(t, 1));
    g.add_edge(Endpoint::in_leaf(1), Endpoint::node_port(t, 1));
    auto vs = g.validate();
    bool found = false;
    for (const auto& v : vs)
        if (v.message.find("port used twice") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("the empty graph is vacuously valid") {
    Graph g;
    CHECK(g.validate().empty());
}

TEST_CASE("free loops are transient and eliminated") {
    Graph g;
    g.add_free_loop();
    g.add_free_loop();
    CHECK(!g.is_valid());
    CHECK(g.eliminate_loops() == 2);
    CHECK(g.is_valid());
}
