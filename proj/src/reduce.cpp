#include "glc/reduce.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "glc/canonical.hpp"

namespace glc {

Strategy Strategy::lambda_default(int budget) {
    // dead regions that detach completely go in one global pruning; local
    // pruning handles the rest; expansive fan-out comes last
    Strategy s;
    s.kinds = {MoveKind::Beta,          MoveKind::PruneGlobal,      MoveKind::PruneLocalFanOut,
               MoveKind::PruneLocalApp, MoveKind::PruneLocalDil,    MoveKind::PruneLocalLambda,
               MoveKind::FanOutGlobal};
    s.budget = budget;
    return s;
}

Strategy Strategy::reidemeister(int budget) {
    Strategy s;
    s.kinds = {MoveKind::Beta,          MoveKind::R1,
               MoveKind::R2,            MoveKind::Ext2,
               MoveKind::CoAssoc,       MoveKind::PruneLocalFanOut,
               MoveKind::PruneLocalApp, MoveKind::PruneLocalDil,
               MoveKind::PruneLocalLambda};
    s.budget = budget;
    return s;
}

ReduceResult reduce(const Graph& g, const Strategy& s) {
    SequenceResult seq = apply_sequence(g, s.kinds, s.budget, s.record_hashes);
    if (s.normalize_after) seq.graph = normalize_coassoc(seq.graph);
    return {std::move(seq.graph), std::move(seq.trace)};
}

Graph normalize_coassoc(const Graph& g0) {
    Graph g = g0;
    Wiring w(g);

    auto fanout_child = [&](NodeId f, int leg) -> std::optional<NodeId> {
        auto e = w.edge_from_port(f, leg);
        if (!e) return std::nullopt;
        const Endpoint& d = g.edge(*e).dst;
        if (d.is_port() && d.port == 1 && g.has_node(d.id) &&
            g.node(d.id).gate.kind == GateKind::FanOut)
            return d.id;
        return std::nullopt;
    };

    // tree roots: fanouts whose input does not come from another fanout leg
    std::vector<NodeId> roots;
    for (const auto& [nid, node] : g.nodes()) {
        if (node.gate.kind != GateKind::FanOut) continue;
        auto e = w.edge_into_port(nid, 1);
        if (!e) continue;
        const Endpoint& s = g.edge(*e).src;
        bool from_fanout_leg = s.is_port() && g.has_node(s.id) &&
                               g.node(s.id).gate.kind == GateKind::FanOut &&
                               (s.port == 2 || s.port == 3);
        if (!from_fanout_leg) roots.push_back(nid);
    }

    for (NodeId root : roots) {
        // in-order leaf targets and member nodes; bail out on cycles
        std::vector<NodeId> members;
        std::vector<Endpoint> leaves;
        std::set<NodeId> seen;
        bool cyclic = false;
        std::function<void(NodeId)> walk = [&](NodeId f) {
            if (cyclic || seen.count(f)) {
                cyclic = true;
                return;
            }
            seen.insert(f);
            members.push_back(f);
            for (int leg : {2, 3}) {
                if (auto child = fanout_child(f, leg)) {
                    walk(*child);
                } else {
                    auto e = w.edge_from_port(f, leg);
                    leaves.push_back(g.edge(*e).dst);
                }
            }
        };
        walk(root);
        if (cyclic || members.size() <= 1) {
            if (cyclic) continue;
            // single fanout is already a comb
            continue;
        }
        Endpoint feeder = g.edge(*w.edge_into_port(root, 1)).src;
        // the feeder may sit on a tree member only in cyclic clusters
        if (feeder.is_port() && seen.count(feeder.id)) continue;

        // drop the tree's edges, rebuild as a right comb on sorted ids
        std::vector<EdgeId> dead;
        dead.push_back(*w.edge_into_port(root, 1));
        for (NodeId f : members)
            for (int leg : {2, 3}) dead.push_back(*w.edge_from_port(f, leg));
        for (EdgeId e : dead) g.remove_edge(e);
        std::sort(members.begin(), members.end());
        Endpoint feed = feeder;
        for (std::size_t i = 0; i < members.size(); ++i) {
            NodeId f = members[i];
            g.add_edge(feed, Endpoint::node_port(f, 1));
            g.add_edge(Endpoint::node_port(f, 2), leaves[i]);
            feed = Endpoint::node_port(f, 3);
        }
        g.add_edge(feed, leaves.back());
        w = Wiring(g);
    }
    return g;
}

Graph structural_normalize(const Graph& g) {
    std::vector<MoveKind> kinds = {MoveKind::PruneLocalFanOut, MoveKind::PruneLocalApp,
                                   MoveKind::PruneLocalDil,    MoveKind::PruneLocalLambda,
                                   MoveKind::PruneGlobal,      MoveKind::FanOutGlobal};
    SequenceResult seq = apply_sequence(g, kinds, 100000);
    if (seq.trace.budget_exhausted)
        throw GlcError("structural_normalize did not reach a fixed point");
    return normalize_coassoc(seq.graph);
}

bool equivalent_mod_structure(const Graph& a, const Graph& b) {
    return is_isomorphic(structural_normalize(a), structural_normalize(b));
}

// ------------------------------------------------------------ standard library

Graph combinator(char which) {
    switch (which) {
        case 'I': return encode(parse_term("\\x.x"));
        case 'K': return encode(parse_term("\\x.\\y.x"));
        case 'S': return encode(parse_term("\\x.\\y.\\z.(x z) (y z)"));
        default: throw GlcError(std::string("unknown combinator '") + which + "'");
    }
}

Graph church(int n) {
    if (n < 0) throw GlcError("church numerals need n >= 0");
    std::ostringstream body;
    for (int i = 0; i < n; ++i) body << "f (";
    body << "x";
    for (int i = 0; i < n; ++i) body << ")";
    return encode(parse_term("\\f.\\x." + body.str()));
}

Graph succ_graph() { return encode(parse_term("\\n.\\f.\\x.f ((n f) x)")); }
Graph plus_graph() { return encode(parse_term("\\m.\\n.\\f.\\x.(m f) ((n f) x)")); }
Graph omega_graph() { return encode(parse_term("(\\x.x x) (\\x.x x)")); }

Graph crossing(const GroupElem& eps) {
    GraphBuilder b;
    NodeId f = b.gate(GateKind::FanOut);
    NodeId d = b.gate(GateKind::Dil, eps);
    b.connect(b.in("x"), b.port(d, 2));
    b.connect(b.in("y"), b.port(f, 1));
    b.connect(b.port(f, 2), b.out("l"));
    b.connect(b.port(f, 3), b.port(d, 1));
    b.connect(b.port(d, 3), b.out("r"));
    return b.build();
}

Graph crossing_inv(const GroupElem& eps) {
    GraphBuilder b;
    NodeId f = b.gate(GateKind::FanOut);
    NodeId d = b.gate(GateKind::Dil, eps.inverse());
    b.connect(b.in("x"), b.port(f, 1));
    b.connect(b.in("y"), b.port(d, 2));
    b.connect(b.port(f, 2), b.out("r"));
    b.connect(b.port(f, 3), b.port(d, 1));
    b.connect(b.port(d, 3), b.out("l"));
    return b.build();
}

Graph box_graph(const GroupElem& label) {
    GraphBuilder b;
    NodeId l = b.gate(GateKind::Lambda);
    NodeId f = b.gate(GateKind::FanOut);
    NodeId d = b.gate(GateKind::Dil, label);
    b.connect(b.port(l, 3), b.port(f, 1));
    b.connect(b.port(f, 2), b.port(l, 1));
    b.connect(b.port(f, 3), b.port(d, 2));
    b.connect(b.port(l, 2), b.port(d, 1));
    b.connect(b.port(d, 3), b.out("out"));
    return b.build();
}

Graph compose_app(const Graph& a, const Graph& b) {
    if (!a.in_leaves().empty() || !b.in_leaves().empty())
        throw GlcError("compose_app needs closed graphs");
    if (a.out_leaves().size() != 1 || b.out_leaves().size() != 1)
        throw GlcError("compose_app needs exactly one output per operand");
    Graph g;
    auto graft = [&g](const Graph& src) -> Endpoint {
        std::map<NodeId, NodeId> remap;
        for (const auto& [nid, node] : src.nodes()) remap[nid] = g.add_node(node.gate);
        Endpoint root = Endpoint::none();
        for (const auto& [eid, e] : src.edges()) {
            Endpoint ns = Endpoint::node_port(remap.at(e.src.id), e.src.port);
            if (e.dst.kind == EndKind::OutLeaf) {
                root = ns;
                continue;
            }
            g.add_edge(ns, Endpoint::node_port(remap.at(e.dst.id), e.dst.port));
        }
        return root;
    };
    Endpoint ra = graft(a);
    Endpoint rb = graft(b);
    NodeId c = g.add_node(Gate{GateKind::App, {}});
    g.add_edge(ra, Endpoint::node_port(c, 1));
    g.add_edge(rb, Endpoint::node_port(c, 2));
    g.add_edge(Endpoint::node_port(c, 3), Endpoint::out_leaf(g.add_out_leaf("out")));
    return g;
}

namespace {

struct NamedParser {
    std::string s;
    std::size_t pos = 0;

    void ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string ident() {
        ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' || s[pos] == '^' ||
                s[pos] == '*' || s[pos] == '-'))
            ++pos;
        return s.substr(start, pos - start);
    }

    Graph parse() {
        Graph g = expr();
        ws();
        if (pos != s.size()) throw GlcError("builder: trailing input in '" + s + "'");
        return g;
    }

    Graph expr() {
        std::string name = ident();
        if (name.empty()) throw GlcError("builder: expected a name in '" + s + "'");
        if (name == "I" || name == "K" || name == "S") return combinator(name[0]);
        if (name == "succ") return succ_graph();
        if (name == "plus") return plus_graph();
        if (name == "omega") return omega_graph();
        if (name == "wire") {
            GraphBuilder b;
            b.connect(b.in("x"), b.out("out"));
            return b.build();
        }
        if (name == "church") {
            if (!eat('(')) throw GlcError("builder: church(n)");
            std::string n = ident();
            if (!eat(')')) throw GlcError("builder: church(n)");
            return church(std::stoi(n));
        }
        if (name == "box") {
            if (!eat('(')) throw GlcError("builder: box(label)");
            std::string l = ident();
            if (!eat(')')) throw GlcError("builder: box(label)");
            return box_graph(GroupElem::parse(l));
        }
        if (name == "app") {
            if (!eat('(')) throw GlcError("builder: app(a,b)");
            Graph a = expr();
            if (!eat(',')) throw GlcError("builder: app(a,b)");
            Graph b = expr();
            if (!eat(')')) throw GlcError("builder: app(a,b)");
            return compose_app(a, b);
        }
        throw GlcError("builder: unknown name '" + name + "'");
    }
};

} // namespace

Graph build_named(const std::string& expr) {
    NamedParser p{expr};
    return p.parse();
}

// ------------------------------------------------------------ derived moves

ProofResult verify_planar_beta(int variant) {
    if (variant < 1 || variant > 3) throw GlcError("planar beta variants are 1, 2 and 3");
    int k = variant;
    GraphBuilder b;
    std::vector<NodeId> lams, apps;
    for (int i = 0; i < k; ++i) {
        lams.push_back(b.gate(GateKind::Lambda));
        apps.push_back(b.gate(GateKind::App));
    }
    for (int i = 0; i < k; ++i) {
        b.connect(b.port(lams[i], 3), b.port(apps[i], 1));
        b.connect(b.port(lams[i], 2), b.port(apps[(i + 1) % k], 2));
        b.connect(b.in("a" + std::to_string(i + 1)), b.port(lams[i], 1));
        b.connect(b.port(apps[i], 3), b.out("z" + std::to_string(i + 1)));
    }
    Graph gadget = b.build();

    SequenceResult seq = apply_sequence(gadget, {MoveKind::Beta}, k);
    ProofResult pr;
    pr.graph = seq.graph;
    pr.trace = seq.trace;

    GraphBuilder rb;
    for (int i = 0; i < k; ++i)
        rb.connect(rb.in("a" + std::to_string(i + 1)), rb.out("z" + std::to_string(i + 1)));
    Graph wires = rb.build();

    bool counts_ok = static_cast<int>(seq.trace.steps.size()) == k &&
                     seq.trace.count(MoveKind::Beta) == k && !seq.trace.budget_exhausted &&
                     find_matches(seq.graph, MoveKind::Beta).empty();
    bool shape_ok = is_isomorphic(seq.graph, wires);
    pr.ok = counts_ok && shape_ok;
    if (!pr.ok) {
        std::ostringstream os;
        os << "planar beta P" << variant << ": steps=" << seq.trace.steps.size()
           << " shape_ok=" << shape_ok;
        pr.detail = os.str();
    }
    return pr;
}

ProofResult verify_reidemeister_ii(const GroupElem& eps) {
    // stack crossing(eps) over crossing_inv(eps)
    Graph top = crossing(eps);
    Graph bottom = crossing_inv(eps);
    Graph g;
    std::map<NodeId, NodeId> m_top, m_bot;
    for (const auto& [nid, node] : top.nodes()) m_top[nid] = g.add_node(node.gate);
    for (const auto& [nid, node] : bottom.nodes()) m_bot[nid] = g.add_node(node.gate);
    std::uint32_t in_x = g.add_in_leaf("x");
    std::uint32_t in_y = g.add_in_leaf("y");
    std::uint32_t out_x = g.add_out_leaf("xo");
    std::uint32_t out_y = g.add_out_leaf("yo");

    auto port_of = [](const std::map<NodeId, NodeId>& m, const Endpoint& e) {
        return Endpoint::node_port(m.at(e.id), e.port);
    };
    // top outputs feed the bottom inputs strand by strand: l -> x, r -> y
    std::map<std::string, Endpoint> top_out, bot_in;
    for (const auto& [eid, e] : top.edges()) {
        if (e.dst.kind == EndKind::OutLeaf) {
            top_out[top.out_leaves()[e.dst.id].name] = port_of(m_top, e.src);
        } else if (e.src.kind == EndKind::InLeaf) {
            Endpoint d = port_of(m_top, e.dst);
            g.add_edge(top.in_leaves()[e.src.id].name == "x" ? Endpoint::in_leaf(in_x)
                                                             : Endpoint::in_leaf(in_y),
                       d);
        } else {
            g.add_edge(port_of(m_top, e.src), port_of(m_top, e.dst));
        }
    }
    for (const auto& [eid, e] : bottom.edges()) {
        if (e.src.kind == EndKind::InLeaf) {
            bot_in[bottom.in_leaves()[e.src.id].name] = port_of(m_bot, e.dst);
        } else if (e.dst.kind == EndKind::OutLeaf) {
            g.add_edge(port_of(m_bot, e.src),
                       bottom.out_leaves()[e.dst.id].name == "l" ? Endpoint::out_leaf(out_x)
                                                                 : Endpoint::out_leaf(out_y));
        } else {
            g.add_edge(port_of(m_bot, e.src), port_of(m_bot, e.dst));
        }
    }
    g.add_edge(top_out.at("l"), bot_in.at("x"));
    g.add_edge(top_out.at("r"), bot_in.at("y"));
    {
        auto violations = g.validate();
        if (!violations.empty()) throw GlcError("crossing stack is invalid: " + violations[0].message);
    }

    ReduceResult rr = reduce(g, Strategy::reidemeister(64));

    GraphBuilder wb;
    wb.connect(wb.in("x"), wb.out("xo"));
    wb.connect(wb.in("y"), wb.out("yo"));
    Graph wires = wb.build();

    ProofResult pr;
    pr.ok = is_isomorphic(rr.graph, wires);
    pr.graph = std::move(rr.graph);
    pr.trace = std::move(rr.trace);
    if (!pr.ok) pr.detail = "reduction did not reach two parallel wires";
    return pr;
}

} // namespace glc
