#include "doctest.h"

#include "glc/canonical.hpp"
#include "glc/encode.hpp"
#include "glc/reduce.hpp"
#include "glc/serialize.hpp"

using namespace glc;

TEST_CASE("round trip keeps identical ids") {
    Graph g = encode(parse_term("\\x.x"));
    Graph h = deserialize(serialize(g));
    CHECK(is_isomorphic(g, h));
    // same ids, not merely isomorphic
    for (const auto& [nid, node] : g.nodes()) {
        CHECK(h.has_node(nid));
        CHECK(h.node(nid).gate.kind == node.gate.kind);
    }
    CHECK(serialize(g) == serialize(h));
}

TEST_CASE("round trip church(5)") {
    Graph g = church(5);
    CHECK(is_isomorphic(deserialize(serialize(g)), g));
}

TEST_CASE("round trip keeps dilation labels") {
    Graph g = crossing(GroupElem::parse("a^2*b^-1"));
    Graph h = deserialize(serialize(g));
    CHECK(is_isomorphic(g, h));
}

TEST_CASE("unwired graphs fail to load") {
    CHECK_THROWS_WITH_AS(deserialize("node n1 lambda\n"), doctest::Contains("invalid"), GlcError);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(deserialize("in x\nnode n1 whatever\n"), doctest::Contains("line 2"),
                         GlcError);
    CHECK_THROWS_WITH_AS(deserialize("edge e1 a -> b\n"), doctest::Contains("line 1"), GlcError);
    CHECK_THROWS_WITH_AS(deserialize("node n1 dil\n"), doctest::Contains("group element"), GlcError);
}

TEST_CASE("dot export is structurally well formed") {
    Graph top;
    NodeId t = top.add_node(Gate{GateKind::Top, {}});
    top.add_edge(Endpoint::in_leaf(top.add_in_leaf("x")), Endpoint::node_port(t, 1));
    std::string dot = to_dot(top);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find(" n" + std::to_string(t) + " [shape=") != std::string::npos);
    // balanced braces, statements end with ; or {
    int depth = 0;
    for (char c : dot) {
        if (c == '{') ++depth;
        if (c == '}') --depth;
        CHECK(depth >= 0);
    }
    CHECK(depth == 0);

    // gate census for the encoder output of S
    Graph s = combinator('S');
    CHECK(s.gate_count(GateKind::Lambda) == 3);
    CHECK(s.gate_count(GateKind::App) == 3);
    CHECK(s.gate_count(GateKind::FanOut) == 1);
    std::string sdot = to_dot(s);
    std::size_t count = 0, pos = 0;
    while ((pos = sdot.find("shape=circle", pos)) != std::string::npos) {
        ++count;
        pos += 1;
    }
    CHECK(count == 3); // the lambda nodes
}
