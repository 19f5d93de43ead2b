#include "glc/moves.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "glc/canonical.hpp"

namespace glc {

const char* move_name(MoveKind k) {
    switch (k) {
        case MoveKind::Beta: return "beta";
        case MoveKind::CoAssoc: return "coassoc";
        case MoveKind::CoComm: return "cocomm";
        case MoveKind::R1: return "r1";
        case MoveKind::R2: return "r2";
        case MoveKind::Ext2: return "ext2";
        case MoveKind::PruneLocalFanOut: return "prune_local_fanout";
        case MoveKind::PruneLocalApp: return "prune_local_app";
        case MoveKind::PruneLocalDil: return "prune_local_dil";
        case MoveKind::PruneLocalLambda: return "prune_local_lambda";
        case MoveKind::Ext1: return "ext1";
        case MoveKind::FanOutGlobal: return "fanout_global";
        case MoveKind::PruneGlobal: return "prune_global";
        case MoveKind::LoopElim: return "loop_elim";
    }
    return "?";
}

std::optional<MoveKind> move_from_name(const std::string& s) {
    for (int k = 0; k <= static_cast<int>(MoveKind::LoopElim); ++k) {
        auto kind = static_cast<MoveKind>(k);
        if (s == move_name(kind)) return kind;
    }
    return std::nullopt;
}

bool is_local_prune(MoveKind k) {
    return k == MoveKind::PruneLocalFanOut || k == MoveKind::PruneLocalApp ||
           k == MoveKind::PruneLocalDil || k == MoveKind::PruneLocalLambda;
}

namespace {

GateKind kind_of(const Graph& g, NodeId n) { return g.node(n).gate.kind; }

bool edge_exists(const Wiring& w, const Graph& g, NodeId a, int pa, NodeId b, int pb) {
    auto e = w.edge_from_port(a, pa);
    if (!e) return false;
    const Endpoint& d = g.edge(*e).dst;
    return d.is_port() && d.id == b && d.port == pb;
}

bool port_hits_top(const Wiring& w, const Graph& g, NodeId n, int port, NodeId& top_out) {
    auto e = w.edge_from_port(n, port);
    if (!e) return false;
    const Endpoint& d = g.edge(*e).dst;
    if (!d.is_port() || !g.has_node(d.id)) return false;
    if (kind_of(g, d.id) != GateKind::Top) return false;
    top_out = d.id;
    return true;
}

// Deletes a set of nodes while sewing wires through them: for every pair
// (in-port -> out-port) the edge entering the in-port is merged with the
// edge leaving the out-port. Chains that close on themselves become loops
// and are counted for elimination.
struct Splice {
    Graph& g;
    std::set<NodeId> deleted;
    std::map<Endpoint, Endpoint> sew; // in-port -> out-port
    int loops = 0;
    // created edges together with the first sew key each chain crossed
    std::vector<std::pair<Endpoint, EdgeId>> created = {};

    void run() {
        Wiring w(g);
        std::set<Endpoint> sew_outs;
        for (const auto& [in, out] : sew) sew_outs.insert(out);

        std::set<EdgeId> consumed;
        // chain starts: edges ending at a sew key whose source is exterior
        std::vector<EdgeId> starts;
        for (const auto& [eid, e] : g.edges()) {
            if (sew.count(e.dst) && !sew_outs.count(e.src)) starts.push_back(eid);
        }
        for (EdgeId s : starts) {
            Endpoint first_key = g.edge(s).dst;
            Endpoint src = g.edge(s).src;
            EdgeId cur = s;
            consumed.insert(cur);
            Endpoint dst;
            while (true) {
                Endpoint out = sew.at(g.edge(cur).dst);
                auto next = w.edge_from(out);
                if (!next) throw GlcError("splice: unwired sew target");
                cur = *next;
                consumed.insert(cur);
                dst = g.edge(cur).dst;
                if (!sew.count(dst)) break;
            }
            EdgeId ne = g.add_edge(src, dst);
            created.emplace_back(first_key, ne);
        }
        // anything still ending at a sew key is part of a closed cycle
        for (const auto& [eid, e] : g.edges()) {
            if (consumed.count(eid)) continue;
            if (sew.count(e.dst) && sew_outs.count(e.src)) {
                // walk and consume the cycle
                EdgeId cur = eid;
                while (!consumed.count(cur)) {
                    consumed.insert(cur);
                    Endpoint out = sew.at(g.edge(cur).dst);
                    auto next = w.edge_from(out);
                    if (!next) throw GlcError("splice: unwired sew target");
                    cur = *next;
                }
                ++loops;
            }
        }
        for (EdgeId eid : consumed) g.remove_edge(eid);
        // drop any remaining edge touching a deleted node (e.g. the redex edge)
        std::vector<EdgeId> dead;
        for (const auto& [eid, e] : g.edges()) {
            bool touches = (e.src.is_port() && deleted.count(e.src.id)) ||
                           (e.dst.is_port() && deleted.count(e.dst.id));
            if (touches) dead.push_back(eid);
        }
        for (EdgeId eid : dead) g.remove_edge(eid);
        for (NodeId n : deleted) g.remove_node(n);
    }
};

[[noreturn]] void stale() { throw GlcError("stale move instance: pattern no longer matches"); }

// ---------------------------------------------------------------- matchers

void find_beta(const Graph& g, const Wiring& w, std::vector<MoveInstance>& out) {
    for (const auto& [nid, node] : g.nodes()) {
        if (node.gate.kind != GateKind::Lambda) continue;
        auto e = w.edge_from_port(nid, 3);
        if (!e) continue;
        const Endpoint& d = g.edge(*e).dst;
        if (d.is_port() && d.port == 1 && g.has_node(d.id) && kind_of(g, d.id) == GateKind::App)
            out.push_back({MoveKind::Beta, false, {nid, d.id}, {}, 0});
    }
}

void find_beta_reverse(const Graph& g, std::vector<MoveInstance>& out) {
    std::vector<EdgeId> ids;
    for (const auto& [eid, e] : g.edges())
        if (!e.is_free_loop()) ids.push_back(eid);
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = 0; j < ids.size(); ++j)
            if (i != j) out.push_back({MoveKind::Beta, true, {}, {ids[i], ids[j]}, 0});
}

void find_coassoc(const Graph& g, const Wiring& w, bool reverse, std::vector<MoveInstance>& out) {
    int leg = reverse ? 3 : 2;
    for (const auto& [nid, node] : g.nodes()) {
        if (node.gate.kind != GateKind::FanOut) continue;
        auto e = w.edge_from_port(nid, leg);
        if (!e) continue;
        const Endpoint& d = g.edge(*e).dst;
        if (d.is_port() && d.port == 1 && g.has_node(d.id) && kind_of(g, d.id) == GateKind::FanOut)
            out.push_back({MoveKind::CoAssoc, reverse, {nid, d.id}, {}, 0});
    }
}

void find_cocomm(const Graph& g, std::vector<MoveInstance>& out) {
    for (const auto& [nid, node] : g.nodes())
        if (node.gate.kind == GateKind::FanOut)
            out.push_back({MoveKind::CoComm, false, {nid}, {}, 0});
}

void find_r1(const Graph& g, const Wiring& w, std::vector<MoveInstance>& out) {
    for (const auto& [nid, node] : g.nodes()) {
        if (node.gate.kind != GateKind::FanOut) continue;
        for (int variant = 0; variant < 2; ++variant) {
            int leg_to_p1 = variant == 0 ? 2 : 3;
            int leg_to_p2 = variant == 0 ? 3 : 2;
            auto e1 = w.edge_from_port(nid, leg_to_p1);
            auto e2 = w.edge_from_port(nid, leg_to_p2);
            if (!e1 || !e2) continue;
            const Endpoint& d1 = g.edge(*e1).dst;
            const Endpoint& d2 = g.edge(*e2).dst;
            if (d1.is_port() && d2.is_port() && d1.id == d2.id && d1.port == 1 && d2.port == 2 &&
                g.has_node(d1.id) && kind_of(g, d1.id) == GateKind::Dil)
                out.push_back({MoveKind::R1, false, {nid, d1.id}, {}, variant});
        }
    }
}

void find_r2(const Graph& g, const Wiring& w, std::vector<MoveInstance>& out) {
    for (const auto& [nid, node] : g.nodes()) {
        if (node.gate.kind != GateKind::FanOut) continue;
        for (int variant = 0; variant < 2; ++variant) {
            int leg_outer = variant == 0 ? 2 : 3;
            int leg_inner = variant == 0 ? 3 : 2;
            auto eo = w.edge_from_port(nid, leg_outer);
            auto ei = w.edge_from_port(nid, leg_inner);
            if (!eo || !ei) continue;
            const Endpoint& douter = g.edge(*eo).dst;
            const Endpoint& dinner = g.edge(*ei).dst;
            if (!douter.is_port() || !dinner.is_port() || douter.port != 1 || dinner.port != 1)
                continue;
            if (douter.id == dinner.id) continue;
            if (kind_of(g, douter.id) != GateKind::Dil || kind_of(g, dinner.id) != GateKind::Dil)
                continue;
            // the inner dilation's result feeds the outer's right operand
            if (!edge_exists(w, g, dinner.id, 3, douter.id, 2)) continue;
            out.push_back({MoveKind::R2, false, {nid, douter.id, dinner.id}, {}, variant});
        }
    }
}

void find_ext2(const Graph& g, std::vector<MoveInstance>& out) {
    for (const auto& [nid, node] : g.nodes())
        if (node.gate.kind == GateKind::Dil && node.gate.dil_label.is_identity())
            out.push_back({MoveKind::Ext2, false, {nid}, {}, 0});
}

void find_prune_local(const Graph& g, const Wiring& w, MoveKind kind, std::vector<MoveInstance>& out) {
    for (const auto& [nid, node] : g.nodes()) {
        NodeId top = 0;
        switch (kind) {
            case MoveKind::PruneLocalFanOut:
                if (node.gate.kind != GateKind::FanOut) continue;
                for (int leg = 2; leg <= 3; ++leg)
                    if (port_hits_top(w, g, nid, leg, top))
                        out.push_back({kind, false, {nid, top}, {}, leg});
                continue;
            case MoveKind::PruneLocalApp:
                if (node.gate.kind != GateKind::App) continue;
                break;
            case MoveKind::PruneLocalDil:
                if (node.gate.kind != GateKind::Dil) continue;
                break;
            case MoveKind::PruneLocalLambda: {
                if (node.gate.kind != GateKind::Lambda) continue;
                NodeId t2 = 0, t3 = 0;
                if (port_hits_top(w, g, nid, 2, t2) && port_hits_top(w, g, nid, 3, t3))
                    out.push_back({kind, false, {nid, t2, t3}, {}, 0});
                continue;
            }
            default:
                continue;
        }
        if (port_hits_top(w, g, nid, 3, top)) out.push_back({kind, false, {nid, top}, {}, 0});
    }
}

// side condition helper: directed reachability over nodes, skipping excluded
bool reachable_outside(const Graph& g, NodeId from, NodeId to, const std::set<NodeId>& excluded) {
    if (excluded.count(from) || excluded.count(to)) return false;
    if (from == to) return true;
    std::set<NodeId> seen{from};
    std::deque<NodeId> q{from};
    std::multimap<NodeId, NodeId> succ;
    for (const auto& [eid, e] : g.edges())
        if (e.src.is_port() && e.dst.is_port()) succ.emplace(e.src.id, e.dst.id);
    while (!q.empty()) {
        NodeId n = q.front();
        q.pop_front();
        auto [lo, hi] = succ.equal_range(n);
        for (auto it = lo; it != hi; ++it) {
            NodeId m = it->second;
            if (excluded.count(m) || seen.count(m)) continue;
            if (m == to) return true;
            seen.insert(m);
            q.push_back(m);
        }
    }
    return false;
}

bool ext1_side_condition(const Graph& g, const Wiring& w, NodeId lam, NodeId app) {
    // exterior edges: "2" leaves the lambda's result port, "1" feeds the
    // application's function port; the move needs no oriented path from 2
    // back to 1 avoiding the matched pair.
    auto e_out = w.edge_from_port(lam, 3);
    auto e_in = w.edge_into_port(app, 1);
    if (!e_out || !e_in) return false;
    const Endpoint& from = g.edge(*e_out).dst;
    const Endpoint& to = g.edge(*e_in).src;
    if (!from.is_port() || !to.is_port()) return true; // a leaf ends the path
    return !reachable_outside(g, from.id, to.id, {lam, app});
}

void find_ext1(const Graph& g, const Wiring& w, std::vector<MoveInstance>& out) {
    for (const auto& [nid, node] : g.nodes()) {
        if (node.gate.kind != GateKind::Lambda) continue;
        auto e = w.edge_into_port(nid, 1);
        if (!e) continue;
        const Endpoint& s = g.edge(*e).src;
        if (!s.is_port() || s.port != 3 || !g.has_node(s.id) || kind_of(g, s.id) != GateKind::App)
            continue;
        NodeId app = s.id;
        if (!edge_exists(w, g, nid, 2, app, 2)) continue;
        if (!ext1_side_condition(g, w, nid, app)) continue;
        out.push_back({MoveKind::Ext1, false, {nid, app}, {}, 0});
    }
}

// Weakly connected component of `start` ignoring `skip_edge`. Fails (returns
// false) if the component touches a leaf or contains `forbidden`.
bool closed_component(const Graph& g, NodeId start, EdgeId skip_edge, NodeId forbidden,
                      std::set<NodeId>& nodes_out, std::set<EdgeId>& edges_out) {
    std::multimap<NodeId, EdgeId> touch;
    for (const auto& [eid, e] : g.edges()) {
        if (eid == skip_edge) continue;
        if (e.src.is_port()) touch.emplace(e.src.id, eid);
        if (e.dst.is_port()) touch.emplace(e.dst.id, eid);
    }
    std::deque<NodeId> q{start};
    nodes_out = {start};
    while (!q.empty()) {
        NodeId n = q.front();
        q.pop_front();
        if (n == forbidden) return false;
        auto [lo, hi] = touch.equal_range(n);
        for (auto it = lo; it != hi; ++it) {
            const Edge& e = g.edge(it->second);
            if (!e.src.is_port() || !e.dst.is_port()) return false; // leaf in component
            edges_out.insert(it->second);
            for (NodeId m : {e.src.id, e.dst.id}) {
                if (!nodes_out.count(m)) {
                    nodes_out.insert(m);
                    q.push_back(m);
                }
            }
        }
    }
    return true;
}

void find_fanout_global(const Graph& g, const Wiring& w, std::vector<MoveInstance>& out) {
    for (const auto& [nid, node] : g.nodes()) {
        if (node.gate.kind != GateKind::FanOut) continue;
        auto e = w.edge_into_port(nid, 1);
        if (!e) continue;
        const Endpoint& s = g.edge(*e).src;
        if (!s.is_port()) continue;
        std::set<NodeId> comp;
        std::set<EdgeId> comp_edges;
        if (!closed_component(g, s.id, *e, nid, comp, comp_edges)) continue;
        out.push_back({MoveKind::FanOutGlobal, false, {nid}, {}, 0});
    }
}

// standalone rooted copy of a hanging component, for the reverse move's
// identical-subgraph test
Graph extract_rooted(const Graph& g, const std::set<NodeId>& comp, const std::set<EdgeId>& edges,
                     Endpoint root_port) {
    Graph out;
    std::map<NodeId, NodeId> remap;
    for (NodeId n : comp) remap[n] = out.add_node(g.node(n).gate);
    for (EdgeId eid : edges) {
        const Edge& e = g.edge(eid);
        out.add_edge(Endpoint::node_port(remap.at(e.src.id), e.src.port),
                     Endpoint::node_port(remap.at(e.dst.id), e.dst.port));
    }
    std::uint32_t leaf = out.add_out_leaf("r");
    out.add_edge(Endpoint::node_port(remap.at(root_port.id), root_port.port), Endpoint::out_leaf(leaf));
    return out;
}

void find_fanout_global_reverse(const Graph& g, std::vector<MoveInstance>& out) {
    std::vector<EdgeId> ids;
    for (const auto& [eid, e] : g.edges())
        if (e.src.is_port()) ids.push_back(eid);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            const Edge& e1 = g.edge(ids[i]);
            const Edge& e2 = g.edge(ids[j]);
            std::set<NodeId> c1, c2;
            std::set<EdgeId> x1, x2;
            if (!closed_component(g, e1.src.id, ids[i], 0xffffffffu, c1, x1)) continue;
            if (!closed_component(g, e2.src.id, ids[j], 0xffffffffu, c2, x2)) continue;
            bool disjoint = true;
            for (NodeId n : c1)
                if (c2.count(n)) disjoint = false;
            if (!disjoint) continue;
            Graph a = extract_rooted(g, c1, x1, e1.src);
            Graph b = extract_rooted(g, c2, x2, e2.src);
            if (is_isomorphic(a, b)) out.push_back({MoveKind::FanOutGlobal, true, {}, {ids[i], ids[j]}, 0});
        }
    }
}

void find_prune_global(const Graph& g, const Wiring& w, std::vector<MoveInstance>& out) {
    for (const auto& [nid, node] : g.nodes()) {
        if (node.gate.kind != GateKind::Top) continue;
        auto e = w.edge_into_port(nid, 1);
        if (!e) continue;
        const Endpoint& s = g.edge(*e).src;
        if (!s.is_port()) continue;
        std::set<NodeId> comp;
        std::set<EdgeId> comp_edges;
        if (!closed_component(g, s.id, *e, nid, comp, comp_edges)) continue;
        out.push_back({MoveKind::PruneGlobal, false, {nid}, {}, 0});
    }
}

void find_loops(const Graph& g, std::vector<MoveInstance>& out) {
    for (const auto& [eid, e] : g.edges())
        if (e.is_free_loop()) out.push_back({MoveKind::LoopElim, false, {}, {eid}, 0});
}

// ---------------------------------------------------------------- appliers

void check_nodes_alive(const Graph& g, const MoveInstance& m) {
    for (NodeId n : m.nodes)
        if (!g.has_node(n)) stale();
    for (EdgeId e : m.edges)
        if (!g.edges().count(e)) stale();
}

ApplyResult apply_beta(const Graph& g0, const MoveInstance& m) {
    ApplyResult r{g0, 0, {}};
    Wiring w(r.graph);
    NodeId L = m.nodes.at(0), C = m.nodes.at(1);
    if (kind_of(r.graph, L) != GateKind::Lambda || kind_of(r.graph, C) != GateKind::App ||
        !edge_exists(w, r.graph, L, 3, C, 1))
        stale();
    Splice sp{r.graph, {L, C}, {{Endpoint::node_port(L, 1), Endpoint::node_port(C, 3)},
                                {Endpoint::node_port(C, 2), Endpoint::node_port(L, 2)}}};
    sp.run();
    r.loops_removed += sp.loops;
    // report the wire sewn through the entrant side first, so a reverse
    // move on (created[0], created[1]) reinserts the pair the same way round
    std::stable_sort(sp.created.begin(), sp.created.end(),
                     [&](const auto& a, const auto& b) {
                         return (a.first == Endpoint::node_port(L, 1)) >
                                (b.first == Endpoint::node_port(L, 1));
                     });
    for (auto& [key, eid] : sp.created) r.created_edges.push_back(eid);
    return r;
}

ApplyResult apply_beta_reverse(const Graph& g0, const MoveInstance& m) {
    ApplyResult r{g0, 0, {}};
    EdgeId e1 = m.edges.at(0), e2 = m.edges.at(1);
    if (e1 == e2) throw GlcError("reverse beta needs two distinct edges");
    if (r.graph.edge(e1).is_free_loop() || r.graph.edge(e2).is_free_loop()) stale();
    NodeId L = r.graph.add_node(Gate{GateKind::Lambda, {}});
    NodeId C = r.graph.add_node(Gate{GateKind::App, {}});
    Endpoint y = r.graph.edge(e1).dst;
    Endpoint z = r.graph.edge(e2).dst;
    r.graph.edge_mut(e1).dst = Endpoint::node_port(L, 1);
    r.graph.edge_mut(e2).dst = Endpoint::node_port(C, 2);
    r.created_edges.push_back(r.graph.add_edge(Endpoint::node_port(C, 3), y));
    r.created_edges.push_back(r.graph.add_edge(Endpoint::node_port(L, 2), z));
    r.graph.add_edge(Endpoint::node_port(L, 3), Endpoint::node_port(C, 1));
    return r;
}

ApplyResult apply_coassoc(const Graph& g0, const MoveInstance& m) {
    ApplyResult r{g0, 0, {}};
    Wiring w(r.graph);
    NodeId X = m.nodes.at(0), Y = m.nodes.at(1);
    if (kind_of(r.graph, X) != GateKind::FanOut || kind_of(r.graph, Y) != GateKind::FanOut) stale();
    if (!m.reverse) {
        if (!edge_exists(w, r.graph, X, 2, Y, 1)) stale();
        EdgeId exy = *w.edge_from_port(X, 2);
        EdgeId a = *w.edge_from_port(Y, 2);
        EdgeId b = *w.edge_from_port(Y, 3);
        EdgeId c = *w.edge_from_port(X, 3);
        r.graph.edge_mut(a).src = Endpoint::node_port(X, 2);
        r.graph.edge_mut(b).src = Endpoint::node_port(Y, 2);
        r.graph.edge_mut(c).src = Endpoint::node_port(Y, 3);
        r.graph.edge_mut(exy).src = Endpoint::node_port(X, 3);
    } else {
        if (!edge_exists(w, r.graph, X, 3, Y, 1)) stale();
        EdgeId exy = *w.edge_from_port(X, 3);
        EdgeId a = *w.edge_from_port(X, 2);
        EdgeId b = *w.edge_from_port(Y, 2);
        EdgeId c = *w.edge_from_port(Y, 3);
        r.graph.edge_mut(a).src = Endpoint::node_port(Y, 2);
        r.graph.edge_mut(b).src = Endpoint::node_port(Y, 3);
        r.graph.edge_mut(c).src = Endpoint::node_port(X, 3);
        r.graph.edge_mut(exy).src = Endpoint::node_port(X, 2);
    }
    return r;
}

ApplyResult apply_cocomm(const Graph& g0, const MoveInstance& m) {
    ApplyResult r{g0, 0, {}};
    Wiring w(r.graph);
    NodeId F = m.nodes.at(0);
    if (kind_of(r.graph, F) != GateKind::FanOut) stale();
    EdgeId a = *w.edge_from_port(F, 2);
    EdgeId b = *w.edge_from_port(F, 3);
    r.graph.edge_mut(a).src = Endpoint::node_port(F, 3);
    r.graph.edge_mut(b).src = Endpoint::node_port(F, 2);
    return r;
}

ApplyResult apply_r1(const Graph& g0, const MoveInstance& m) {
    ApplyResult r{g0, 0, {}};
    Wiring w(r.graph);
    NodeId F = m.nodes.at(0), D = m.nodes.at(1);
    int leg_to_p1 = m.variant == 0 ? 2 : 3;
    int leg_to_p2 = m.variant == 0 ? 3 : 2;
    if (kind_of(r.graph, F) != GateKind::FanOut || kind_of(r.graph, D) != GateKind::Dil ||
        !edge_exists(w, r.graph, F, leg_to_p1, D, 1) || !edge_exists(w, r.graph, F, leg_to_p2, D, 2))
        stale();
    Splice sp{r.graph, {F, D}, {{Endpoint::node_port(F, 1), Endpoint::node_port(D, 3)}}};
    sp.run();
    r.loops_removed += sp.loops;
    for (auto& [key, eid] : sp.created) r.created_edges.push_back(eid);
    return r;
}

ApplyResult apply_r2(const Graph& g0, const MoveInstance& m) {
    ApplyResult r{g0, 0, {}};
    Wiring w(r.graph);
    NodeId F = m.nodes.at(0), Douter = m.nodes.at(1), Dinner = m.nodes.at(2);
    int leg_outer = m.variant == 0 ? 2 : 3;
    int leg_inner = m.variant == 0 ? 3 : 2;
    if (kind_of(r.graph, F) != GateKind::FanOut || kind_of(r.graph, Douter) != GateKind::Dil ||
        kind_of(r.graph, Dinner) != GateKind::Dil ||
        !edge_exists(w, r.graph, F, leg_outer, Douter, 1) ||
        !edge_exists(w, r.graph, F, leg_inner, Dinner, 1) ||
        !edge_exists(w, r.graph, Dinner, 3, Douter, 2))
        stale();
    GroupElem label = r.graph.node(Douter).gate.dil_label * r.graph.node(Dinner).gate.dil_label;
    NodeId D = r.graph.add_node(Gate{GateKind::Dil, label});
    EdgeId e_in = *w.edge_into_port(F, 1);
    EdgeId e_y = *w.edge_into_port(Dinner, 2);
    EdgeId e_out = *w.edge_from_port(Douter, 3);
    r.graph.edge_mut(e_in).dst = Endpoint::node_port(D, 1);
    r.graph.edge_mut(e_y).dst = Endpoint::node_port(D, 2);
    r.graph.edge_mut(e_out).src = Endpoint::node_port(D, 3);
    for (EdgeId eid :
         {*w.edge_from_port(F, 2), *w.edge_from_port(F, 3), *w.edge_from_port(Dinner, 3)})
        r.graph.remove_edge(eid);
    for (NodeId n : {F, Douter, Dinner}) r.graph.remove_node(n);
    return r;
}

ApplyResult apply_ext2(const Graph& g0, const MoveInstance& m) {
    ApplyResult r{g0, 0, {}};
    Wiring w(r.graph);
    NodeId D = m.nodes.at(0);
    if (kind_of(r.graph, D) != GateKind::Dil || !r.graph.node(D).gate.dil_label.is_identity()) stale();
    EdgeId e1 = *w.edge_into_port(D, 1);
    NodeId T = r.graph.add_node(Gate{GateKind::Top, {}});
    r.graph.edge_mut(e1).dst = Endpoint::node_port(T, 1);
    Splice sp{r.graph, {D}, {{Endpoint::node_port(D, 2), Endpoint::node_port(D, 3)}}};
    sp.run();
    r.loops_removed += sp.loops;
    for (auto& [key, eid] : sp.created) r.created_edges.push_back(eid);
    return r;
}

ApplyResult apply_ext1(const Graph& g0, const MoveInstance& m) {
    ApplyResult r{g0, 0, {}};
    Wiring w(r.graph);
    NodeId L = m.nodes.at(0), C = m.nodes.at(1);
    if (kind_of(r.graph, L) != GateKind::Lambda || kind_of(r.graph, C) != GateKind::App ||
        !edge_exists(w, r.graph, C, 3, L, 1) || !edge_exists(w, r.graph, L, 2, C, 2) ||
        !ext1_side_condition(r.graph, w, L, C))
        stale();
    Splice sp{r.graph, {L, C}, {{Endpoint::node_port(C, 1), Endpoint::node_port(L, 3)}}};
    sp.run();
    r.loops_removed += sp.loops;
    for (auto& [key, eid] : sp.created) r.created_edges.push_back(eid);
    return r;
}

// Top-anchored local pruning with cascade: eliminating one dead pattern may
// cap further wires with fresh Top gates; the cascade keeps pruning at those
// sites as part of the same move application.
void prune_cascade(Graph& g, std::deque<NodeId> worklist) {
    auto is_top = [&](const Endpoint& e) {
        return e.is_port() && g.has_node(e.id) && kind_of(g, e.id) == GateKind::Top;
    };
    while (!worklist.empty()) {
        NodeId T = worklist.front();
        worklist.pop_front();
        if (!g.has_node(T) || kind_of(g, T) != GateKind::Top) continue;
        Wiring w(g);
        auto e_opt = w.edge_into_port(T, 1);
        if (!e_opt) continue;
        const Endpoint s = g.edge(*e_opt).src;
        if (!s.is_port() || !g.has_node(s.id)) continue;
        NodeId n = s.id;
        switch (kind_of(g, n)) {
            case GateKind::FanOut: {
                if (s.port != 2 && s.port != 3) break;
                int other = s.port == 2 ? 3 : 2;
                EdgeId e_other = *w.edge_from_port(n, other);
                Endpoint other_dst = g.edge(e_other).dst;
                g.remove_edge(*e_opt);
                g.remove_node(T);
                Splice sp{g, {n}, {{Endpoint::node_port(n, 1), Endpoint::node_port(n, other)}}};
                sp.run();
                if (is_top(other_dst)) worklist.push_back(other_dst.id);
                break;
            }
            case GateKind::App:
            case GateKind::Dil: {
                if (s.port != 3) break;
                EdgeId in1 = *w.edge_into_port(n, 1);
                EdgeId in2 = *w.edge_into_port(n, 2);
                NodeId t1 = g.add_node(Gate{GateKind::Top, {}});
                NodeId t2 = g.add_node(Gate{GateKind::Top, {}});
                g.edge_mut(in1).dst = Endpoint::node_port(t1, 1);
                g.edge_mut(in2).dst = Endpoint::node_port(t2, 1);
                g.remove_edge(*e_opt);
                g.remove_node(T);
                g.remove_node(n);
                worklist.push_back(t1);
                worklist.push_back(t2);
                break;
            }
            case GateKind::Lambda: {
                int other = s.port == 3 ? 2 : (s.port == 2 ? 3 : 0);
                if (other == 0) break;
                NodeId t_other = 0;
                if (!port_hits_top(w, g, n, other, t_other) || t_other == T) break;
                EdgeId in1 = *w.edge_into_port(n, 1);
                EdgeId e_other = *w.edge_from_port(n, other);
                NodeId t1 = g.add_node(Gate{GateKind::Top, {}});
                g.edge_mut(in1).dst = Endpoint::node_port(t1, 1);
                g.remove_edge(*e_opt);
                g.remove_edge(e_other);
                g.remove_node(T);
                g.remove_node(t_other);
                g.remove_node(n);
                worklist.push_back(t1);
                break;
            }
            default:
                break;
        }
    }
}

ApplyResult apply_prune_local(const Graph& g0, const MoveInstance& m) {
    ApplyResult r{g0, 0, {}};
    Wiring w(r.graph);
    NodeId n = m.nodes.at(0);
    if (!r.graph.has_node(n)) stale();
    NodeId top = 0;
    switch (m.kind) {
        case MoveKind::PruneLocalFanOut:
            if (kind_of(r.graph, n) != GateKind::FanOut || !port_hits_top(w, r.graph, n, m.variant, top) ||
                top != m.nodes.at(1))
                stale();
            break;
        case MoveKind::PruneLocalApp:
            if (kind_of(r.graph, n) != GateKind::App || !port_hits_top(w, r.graph, n, 3, top) ||
                top != m.nodes.at(1))
                stale();
            break;
        case MoveKind::PruneLocalDil:
            if (kind_of(r.graph, n) != GateKind::Dil || !port_hits_top(w, r.graph, n, 3, top) ||
                top != m.nodes.at(1))
                stale();
            break;
        case MoveKind::PruneLocalLambda: {
            NodeId t2 = 0, t3 = 0;
            if (kind_of(r.graph, n) != GateKind::Lambda || !port_hits_top(w, r.graph, n, 2, t2) ||
                !port_hits_top(w, r.graph, n, 3, t3) || t2 != m.nodes.at(1) || t3 != m.nodes.at(2))
                stale();
            top = t3;
            break;
        }
        default:
            stale();
    }
    prune_cascade(r.graph, {top});
    return r;
}

ApplyResult apply_fanout_global(const Graph& g0, const MoveInstance& m) {
    ApplyResult r{g0, 0, {}};
    Wiring w(r.graph);
    NodeId F = m.nodes.at(0);
    if (kind_of(r.graph, F) != GateKind::FanOut) stale();
    auto e_opt = w.edge_into_port(F, 1);
    if (!e_opt) stale();
    const Endpoint root = r.graph.edge(*e_opt).src;
    if (!root.is_port()) stale();
    std::set<NodeId> comp;
    std::set<EdgeId> comp_edges;
    if (!closed_component(r.graph, root.id, *e_opt, F, comp, comp_edges)) stale();

    EdgeId leg2 = *w.edge_from_port(F, 2);
    EdgeId leg3 = *w.edge_from_port(F, 3);
    Endpoint t2 = r.graph.edge(leg2).dst;
    Endpoint t3 = r.graph.edge(leg3).dst;

    // fresh copy of the component, ids allocated in sorted order
    std::map<NodeId, NodeId> remap;
    for (NodeId n : comp) remap[n] = r.graph.add_node(r.graph.node(n).gate);
    for (EdgeId eid : comp_edges) {
        const Edge& e = r.graph.edge(eid);
        r.graph.add_edge(Endpoint::node_port(remap.at(e.src.id), e.src.port),
                         Endpoint::node_port(remap.at(e.dst.id), e.dst.port));
    }
    // original component feeds the first leg's target, the copy the second's
    r.graph.edge_mut(*e_opt).dst = t2;
    r.graph.add_edge(Endpoint::node_port(remap.at(root.id), root.port), t3);
    r.graph.remove_edge(leg2);
    r.graph.remove_edge(leg3);
    r.graph.remove_node(F);
    return r;
}

ApplyResult apply_fanout_global_reverse(const Graph& g0, const MoveInstance& m) {
    ApplyResult r{g0, 0, {}};
    EdgeId e1 = m.edges.at(0), e2 = m.edges.at(1);
    const Edge& ed1 = r.graph.edge(e1);
    const Edge& ed2 = r.graph.edge(e2);
    if (!ed1.src.is_port() || !ed2.src.is_port()) stale();
    std::set<NodeId> c1, c2;
    std::set<EdgeId> x1, x2;
    if (!closed_component(r.graph, ed1.src.id, e1, 0xffffffffu, c1, x1)) stale();
    if (!closed_component(r.graph, ed2.src.id, e2, 0xffffffffu, c2, x2)) stale();
    for (NodeId n : c1)
        if (c2.count(n)) stale();
    Graph a = extract_rooted(r.graph, c1, x1, ed1.src);
    Graph b = extract_rooted(r.graph, c2, x2, ed2.src);
    if (!is_isomorphic(a, b)) stale();

    NodeId F = r.graph.add_node(Gate{GateKind::FanOut, {}});
    Endpoint t1 = ed1.dst;
    Endpoint t2 = ed2.dst;
    r.graph.edge_mut(e1).dst = Endpoint::node_port(F, 1);
    r.graph.add_edge(Endpoint::node_port(F, 2), t1);
    r.graph.add_edge(Endpoint::node_port(F, 3), t2);
    for (EdgeId eid : x2) r.graph.remove_edge(eid);
    r.graph.remove_edge(e2);
    for (NodeId n : c2) r.graph.remove_node(n);
    return r;
}

ApplyResult apply_prune_global(const Graph& g0, const MoveInstance& m) {
    ApplyResult r{g0, 0, {}};
    Wiring w(r.graph);
    NodeId T = m.nodes.at(0);
    if (kind_of(r.graph, T) != GateKind::Top) stale();
    auto e_opt = w.edge_into_port(T, 1);
    if (!e_opt) stale();
    const Endpoint s = r.graph.edge(*e_opt).src;
    if (!s.is_port()) stale();
    std::set<NodeId> comp;
    std::set<EdgeId> comp_edges;
    if (!closed_component(r.graph, s.id, *e_opt, T, comp, comp_edges)) stale();
    for (EdgeId eid : comp_edges) r.graph.remove_edge(eid);
    r.graph.remove_edge(*e_opt);
    for (NodeId n : comp) r.graph.remove_node(n);
    r.graph.remove_node(T);
    return r;
}

ApplyResult apply_loop_elim(const Graph& g0, const MoveInstance& m) {
    ApplyResult r{g0, 0, {}};
    EdgeId e = m.edges.at(0);
    if (!r.graph.edge(e).is_free_loop()) stale();
    r.graph.remove_edge(e);
    r.loops_removed += 1;
    return r;
}

} // namespace

std::vector<MoveInstance> find_matches(const Graph& g, MoveKind kind, bool reverse,
                                       const FindOptions& opts) {
    std::vector<MoveInstance> out;
    Wiring w(g);
    switch (kind) {
        case MoveKind::Beta:
            if (!reverse) {
                find_beta(g, w, out);
            } else if (opts.include_expansive) {
                find_beta_reverse(g, out);
            }
            break;
        case MoveKind::CoAssoc: find_coassoc(g, w, reverse, out); break;
        case MoveKind::CoComm: find_cocomm(g, out); break;
        case MoveKind::R1:
            if (!reverse) find_r1(g, w, out);
            break;
        case MoveKind::R2:
            if (!reverse) find_r2(g, w, out);
            break;
        case MoveKind::Ext2:
            if (!reverse) find_ext2(g, out);
            break;
        case MoveKind::PruneLocalFanOut:
        case MoveKind::PruneLocalApp:
        case MoveKind::PruneLocalDil:
        case MoveKind::PruneLocalLambda:
            if (!reverse) find_prune_local(g, w, kind, out);
            break;
        case MoveKind::Ext1:
            if (!reverse) find_ext1(g, w, out);
            break;
        case MoveKind::FanOutGlobal:
            if (!reverse) {
                find_fanout_global(g, w, out);
            } else if (opts.include_expansive) {
                find_fanout_global_reverse(g, out);
            }
            break;
        case MoveKind::PruneGlobal:
            if (!reverse) find_prune_global(g, w, out);
            break;
        case MoveKind::LoopElim:
            if (!reverse) find_loops(g, out);
            break;
    }
    std::stable_sort(out.begin(), out.end(), [](const MoveInstance& a, const MoveInstance& b) {
        if (a.nodes != b.nodes) return a.nodes < b.nodes;
        if (a.edges != b.edges) return a.edges < b.edges;
        return a.variant < b.variant;
    });
    return out;
}

ApplyResult apply(const Graph& g, const MoveInstance& m) {
    check_nodes_alive(g, m);
    ApplyResult r = [&] {
        switch (m.kind) {
            case MoveKind::Beta: return m.reverse ? apply_beta_reverse(g, m) : apply_beta(g, m);
            case MoveKind::CoAssoc: return apply_coassoc(g, m);
            case MoveKind::CoComm: return apply_cocomm(g, m);
            case MoveKind::R1: return apply_r1(g, m);
            case MoveKind::R2: return apply_r2(g, m);
            case MoveKind::Ext2: return apply_ext2(g, m);
            case MoveKind::PruneLocalFanOut:
            case MoveKind::PruneLocalApp:
            case MoveKind::PruneLocalDil:
            case MoveKind::PruneLocalLambda: return apply_prune_local(g, m);
            case MoveKind::Ext1: return apply_ext1(g, m);
            case MoveKind::FanOutGlobal:
                return m.reverse ? apply_fanout_global_reverse(g, m) : apply_fanout_global(g, m);
            case MoveKind::PruneGlobal: return apply_prune_global(g, m);
            case MoveKind::LoopElim: return apply_loop_elim(g, m);
        }
        throw GlcError("unknown move kind");
    }();
    r.loops_removed += r.graph.eliminate_loops();
    auto violations = r.graph.validate();
    if (!violations.empty()) {
        std::ostringstream os;
        os << "move " << move_name(m.kind) << " broke the graph:";
        for (const auto& v : violations) os << "\n  " << v.message;
        throw GlcError(os.str());
    }
    return r;
}

int Trace::count(MoveKind k) const {
    int n = 0;
    for (const auto& s : steps)
        if (s.kind == k) ++n;
    return n;
}

int Trace::count_local_prunes() const {
    int n = 0;
    for (const auto& s : steps)
        if (is_local_prune(s.kind)) ++n;
    return n;
}

std::string Trace::format() const {
    std::ostringstream os;
    int i = 1;
    for (const auto& s : steps) {
        os << "step " << i++ << " " << move_name(s.kind) << " " << (s.reverse ? "reverse" : "forward")
           << " nodes=";
        for (std::size_t k = 0; k < s.nodes.size(); ++k) {
            if (k) os << ",";
            os << s.nodes[k];
        }
        if (s.nodes.empty()) os << "-";
        os << " hash=" << (s.hash.empty() ? "-" : s.hash) << "\n";
    }
    if (budget_exhausted) os << "# budget exhausted\n";
    return os.str();
}

SequenceResult apply_sequence(const Graph& g, const std::vector<MoveKind>& kinds, int budget,
                              bool record_hashes) {
    if (budget < 0) throw GlcError("budget must be >= 0");
    SequenceResult out{g, {}};
    for (int step = 0; step < budget; ++step) {
        bool applied = false;
        for (MoveKind k : kinds) {
            auto matches = find_matches(out.graph, k);
            if (matches.empty()) continue;
            ApplyResult r = apply(out.graph, matches.front());
            TraceStep ts{k, false, matches.front().nodes, r.loops_removed, ""};
            if (record_hashes) ts.hash = canonical_hash(r.graph);
            out.graph = std::move(r.graph);
            out.trace.steps.push_back(std::move(ts));
            applied = true;
            break;
        }
        if (!applied) return out;
    }
    // a further match means the budget ran out before quiescence
    for (MoveKind k : kinds) {
        if (!find_matches(out.graph, k).empty()) {
            out.trace.budget_exhausted = true;
            break;
        }
    }
    return out;
}

Graph prune_global_reverse(const Graph& g, const Graph& addition) {
    if (addition.out_leaves().size() != 1 || !addition.in_leaves().empty())
        throw GlcError("prune_global_reverse: addition must have exactly one OUT leaf and no IN leaves");
    Graph out = g;
    std::map<NodeId, NodeId> remap;
    for (const auto& [nid, node] : addition.nodes()) remap[nid] = out.add_node(node.gate);
    NodeId cap = out.add_node(Gate{GateKind::Top, {}});
    for (const auto& [eid, e] : addition.edges()) {
        Endpoint src = e.src.is_port() ? Endpoint::node_port(remap.at(e.src.id), e.src.port)
                                       : Endpoint::none();
        Endpoint dst = e.dst.kind == EndKind::OutLeaf
                           ? Endpoint::node_port(cap, 1)
                           : Endpoint::node_port(remap.at(e.dst.id), e.dst.port);
        if (src.kind == EndKind::None) throw GlcError("prune_global_reverse: addition has IN leaves");
        out.add_edge(src, dst);
    }
    return out;
}

} // namespace glc
