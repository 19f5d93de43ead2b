#include "doctest.h"

#include <random>

#include "glc/canonical.hpp"
#include "glc/encode.hpp"
#include "glc/reduce.hpp"
#include "test_support.hpp"

using namespace glc;

namespace {

// rebuild with permuted node and edge ids
Graph relabel(const Graph& g, testing::Rng& rng) {
    std::vector<NodeId> old_ids;
    for (const auto& [nid, node] : g.nodes()) old_ids.push_back(nid);
    std::vector<NodeId> new_ids(old_ids.size());
    for (std::size_t i = 0; i < new_ids.size(); ++i) new_ids[i] = static_cast<NodeId>(100 + i * 3);
    std::shuffle(new_ids.begin(), new_ids.end(), rng);
    std::map<NodeId, NodeId> remap;
    for (std::size_t i = 0; i < old_ids.size(); ++i) remap[old_ids[i]] = new_ids[i];

    Graph out;
    for (const auto& l : g.in_leaves()) out.add_in_leaf(l.name);
    for (const auto& l : g.out_leaves()) out.add_out_leaf(l.name);
    std::vector<NodeId> order = old_ids;
    std::shuffle(order.begin(), order.end(), rng);
    for (NodeId nid : order) out.add_node_with_id(remap.at(nid), g.node(nid).gate);
    auto map_ep = [&](Endpoint e) {
        if (e.is_port()) e.id = remap.at(e.id);
        return e;
    };
    std::vector<EdgeId> eids;
    for (const auto& [eid, e] : g.edges()) eids.push_back(eid);
    std::shuffle(eids.begin(), eids.end(), rng);
    for (EdgeId eid : eids) {
        const Edge& e = g.edge(eid);
        out.add_edge(map_ep(e.src), map_ep(e.dst));
    }
    return out;
}

} // namespace

TEST_CASE("canonical form is invariant under relabeling") {
    testing::Rng rng(testing::test_seed());
    for (const char* term : {"\\x.x", "\\x.\\y.x y", "\\f.\\x.f (f (f x))"}) {
        Graph g = encode(parse_term(term));
        std::string c = canonical_form(g);
        for (int i = 0; i < 25; ++i) {
            Graph h = relabel(g, rng);
            CHECK(canonical_form(h) == c);
        }
    }
}

TEST_CASE("church numerals are pairwise distinguishable") {
    CHECK(canonical_form(church(2)) != canonical_form(church(3)));
    CHECK(!is_isomorphic(church(2), church(3)));
    CHECK(is_isomorphic(church(4), church(4)));
}

TEST_CASE("leaf names participate in isomorphism") {
    GraphBuilder a, b;
    a.connect(a.in("x"), a.out("out"));
    b.connect(b.in("y"), b.out("out"));
    CHECK(!is_isomorphic(a.build(), b.build()));
}

TEST_CASE("dilation labels participate in isomorphism") {
    auto make = [](const char* label) {
        GraphBuilder b;
        NodeId d = b.gate(GateKind::Dil, GroupElem::parse(label));
        b.connect(b.in("x"), b.port(d, 1));
        b.connect(b.in("y"), b.port(d, 2));
        b.connect(b.port(d, 3), b.out("out"));
        return b.build();
    };
    CHECK(is_isomorphic(make("a^2"), make("a^2")));
    CHECK(!is_isomorphic(make("a^2"), make("a")));
}

TEST_CASE("canonical form separates symmetric-looking graphs") {
    // two identical closed boxes joined by an app vs two different ones
    Graph same = compose_app(box_graph(GroupElem::generator("a")), box_graph(GroupElem::generator("a")));
    Graph diff = compose_app(box_graph(GroupElem::generator("a")), box_graph(GroupElem::generator("b")));
    CHECK(!is_isomorphic(same, diff));
    CHECK(is_isomorphic(same, same));
}

TEST_CASE("hash is a stable prefix of the canonical fingerprint") {
    Graph g = church(3);
    CHECK(canonical_hash(g) == canonical_hash(church(3)));
    CHECK(canonical_hash(g).size() == 12);
}
