#include "glc/predicates.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>

namespace glc {

namespace {

std::multimap<NodeId, NodeId> successor_map(const Graph& g) {
    std::multimap<NodeId, NodeId> succ;
    for (const auto& [eid, e] : g.edges())
        if (e.src.is_port() && e.dst.is_port()) succ.emplace(e.src.id, e.dst.id);
    return succ;
}

} // namespace

bool has_oriented_path(const Graph& g, NodeId from, NodeId to, const std::set<NodeId>& excluded) {
    if (from == to) return true;
    if (excluded.count(from)) return false;
    auto succ = successor_map(g);
    std::set<NodeId> seen{from};
    std::deque<NodeId> q{from};
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

LambdaGraphReport is_lambda_graph(const Graph& g) {
    for (const auto& [nid, node] : g.nodes()) {
        if (node.gate.kind == GateKind::Dil) {
            LambdaGraphReport r;
            r.ok = false;
            r.lambda_node = nid;
            r.witness = "dilation gate n" + std::to_string(nid);
            return r;
        }
    }

    // forward successors on nodes; leaves enter as absorbing non-node ends
    std::multimap<NodeId, Endpoint> succ;
    for (const auto& [eid, e] : g.edges())
        if (e.src.is_port()) succ.emplace(e.src.id, e.dst);

    Wiring w(g);
    for (const auto& [lid, node] : g.nodes()) {
        if (node.gate.kind != GateKind::Lambda) continue;

        // nodes that can complete a path: reach any Top, or enter this
        // lambda (its only in-port is the entrant p1)
        std::multimap<NodeId, NodeId> pred;
        for (const auto& [eid, e] : g.edges())
            if (e.src.is_port() && e.dst.is_port()) pred.emplace(e.dst.id, e.src.id);
        std::set<NodeId> good;
        std::deque<NodeId> q;
        for (const auto& [nid, n] : g.nodes())
            if (n.gate.kind == GateKind::Top || nid == lid) {
                good.insert(nid);
                q.push_back(nid);
            }
        while (!q.empty()) {
            NodeId n = q.front();
            q.pop_front();
            auto [lo, hi] = pred.equal_range(n);
            for (auto it = lo; it != hi; ++it) {
                if (good.insert(it->second).second) q.push_back(it->second);
            }
        }

        // forward closure from the bound-variable edge, not expanding
        // through the lambda itself (entering p1 terminates a path)
        auto start_edge = w.edge_from_port(lid, 2);
        if (!start_edge) continue; // invalid graphs are not our problem here
        Endpoint first = g.edge(*start_edge).dst;
        std::set<NodeId> seen;
        std::deque<Endpoint> qe{first};
        while (!qe.empty()) {
            Endpoint ep = qe.front();
            qe.pop_front();
            if (!ep.is_port()) {
                if (ep.kind == EndKind::OutLeaf) {
                    LambdaGraphReport r;
                    r.ok = false;
                    r.lambda_node = lid;
                    r.witness = "path from n" + std::to_string(lid) + ".p2 ends at OUT leaf '" +
                                g.out_leaves()[ep.id].name + "'";
                    return r;
                }
                continue;
            }
            NodeId n = ep.id;
            if (n == lid) continue; // completed at the entrant edge
            if (!seen.insert(n).second) continue;
            if (!good.count(n)) {
                LambdaGraphReport r;
                r.ok = false;
                r.lambda_node = lid;
                r.witness = "vertex n" + std::to_string(n) + " reachable from n" +
                            std::to_string(lid) + ".p2 cannot reach Top or the entrant edge";
                return r;
            }
            auto [lo, hi] = succ.equal_range(n);
            for (auto it = lo; it != hi; ++it) qe.push_back(it->second);
        }
    }
    return {};
}

GateRotation gate_rotation(GateKind k) {
    // every gate carries the same local embedding: ports clockwise in
    // numbering order
    if (k == GateKind::Top) return {1, 0, 0};
    return {1, 2, 3};
}

namespace {

// vertex = node or leaf; darts arranged clockwise per the rotation system
struct RotVertex {
    bool is_leaf = false;
    bool leaf_in = false;
    std::uint32_t id = 0;
    std::vector<Dart> cw; // clockwise dart order
};

struct RotationSystem {
    std::vector<RotVertex> verts;
    std::map<Dart, int> vertex_of;
    std::map<Dart, int> slot_of;

    Dart alpha(Dart d) const { return Dart{d.edge, !d.at_src}; }
    Dart next_cw(Dart d) const {
        const RotVertex& v = verts[vertex_of.at(d)];
        int s = slot_of.at(d);
        return v.cw[(s + 1) % v.cw.size()];
    }
};

RotationSystem build_rotation(const Graph& g) {
    RotationSystem rs;
    std::map<NodeId, int> node_vx;
    std::map<std::pair<bool, std::uint32_t>, int> leaf_vx;
    for (const auto& [nid, node] : g.nodes()) {
        node_vx[nid] = static_cast<int>(rs.verts.size());
        RotVertex v;
        v.id = nid;
        v.cw.resize(gate_arity(node.gate.kind), Dart{0, false});
        rs.verts.push_back(std::move(v));
    }
    for (std::uint32_t i = 0; i < g.in_leaves().size(); ++i) {
        leaf_vx[{true, i}] = static_cast<int>(rs.verts.size());
        RotVertex v;
        v.is_leaf = true;
        v.leaf_in = true;
        v.id = i;
        v.cw.resize(1, Dart{0, false});
        rs.verts.push_back(std::move(v));
    }
    for (std::uint32_t i = 0; i < g.out_leaves().size(); ++i) {
        leaf_vx[{false, i}] = static_cast<int>(rs.verts.size());
        RotVertex v;
        v.is_leaf = true;
        v.leaf_in = false;
        v.id = i;
        v.cw.resize(1, Dart{0, false});
        rs.verts.push_back(std::move(v));
    }
    auto place = [&](const Endpoint& ep, Dart d) {
        int vx;
        int slot;
        switch (ep.kind) {
            case EndKind::Port: {
                vx = node_vx.at(ep.id);
                GateRotation rot = gate_rotation(g.node(ep.id).gate.kind);
                slot = 0;
                for (int i = 0; i < 3; ++i)
                    if (rot[i] == ep.port) slot = i;
                break;
            }
            case EndKind::InLeaf:
                vx = leaf_vx.at({true, ep.id});
                slot = 0;
                break;
            case EndKind::OutLeaf:
                vx = leaf_vx.at({false, ep.id});
                slot = 0;
                break;
            default:
                throw GlcError("face_trace: free loop present");
        }
        rs.verts[vx].cw[slot] = d;
        rs.vertex_of[d] = vx;
        rs.slot_of[d] = slot;
    };
    for (const auto& [eid, e] : g.edges()) {
        place(e.src, Dart{eid, true});
        place(e.dst, Dart{eid, false});
    }
    return rs;
}

// weakly connected components over vertices of the rotation system
std::vector<int> components(const RotationSystem& rs) {
    std::vector<int> comp(rs.verts.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < rs.verts.size(); ++i) {
        if (comp[i] != -1) continue;
        std::deque<int> q{static_cast<int>(i)};
        comp[i] = next;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (const Dart& d : rs.verts[v].cw) {
                int u = rs.vertex_of.at(rs.alpha(d));
                if (comp[u] == -1) {
                    comp[u] = next;
                    q.push_back(u);
                }
            }
        }
        ++next;
    }
    return comp;
}

} // namespace

FaceTrace face_trace(const Graph& g) {
    FaceTrace ft;
    if (g.edges().empty() && g.nodes().empty()) {
        ft.rotation_planar = true;
        ft.leaf_face = std::nullopt;
        return ft;
    }
    for (const auto& [eid, e] : g.edges())
        if (e.is_free_loop()) throw GlcError("face_trace: free loop present");

    RotationSystem rs = build_rotation(g);
    std::vector<int> comp = components(rs);

    std::set<Dart> visited;
    std::map<int, int> comp_faces, comp_verts, comp_edges;
    std::vector<int> face_comp;
    for (std::size_t i = 0; i < rs.verts.size(); ++i) comp_verts[comp[i]]++;
    for (const auto& [eid, e] : g.edges()) {
        Dart d{eid, true};
        comp_edges[comp[rs.vertex_of.at(d)]]++;
    }
    for (const auto& [eid, e] : g.edges()) {
        for (bool at_src : {true, false}) {
            Dart start{eid, at_src};
            if (visited.count(start)) continue;
            std::vector<Dart> face;
            Dart d = start;
            do {
                face.push_back(d);
                visited.insert(d);
                d = rs.next_cw(rs.alpha(d));
            } while (!(d == start));
            int c = comp[rs.vertex_of.at(start)];
            comp_faces[c]++;
            face_comp.push_back(c);
            ft.faces.push_back(std::move(face));
        }
    }

    // genus per component via Euler's formula; isolated vertices
    // (impossible in valid graphs) count as spheres
    bool all_planar = true;
    for (const auto& [c, V] : comp_verts) {
        int E = comp_edges.count(c) ? comp_edges[c] : 0;
        int F = comp_faces.count(c) ? comp_faces[c] : (E == 0 ? 1 : 0);
        int chi = V - E + F;
        int genus = (2 - chi) / 2;
        ft.genus += genus;
        if (genus != 0) all_planar = false;
    }

    // leaf condition: per component, all leaf darts on one face
    std::map<Dart, int> face_of;
    for (std::size_t f = 0; f < ft.faces.size(); ++f)
        for (const Dart& d : ft.faces[f]) face_of[d] = static_cast<int>(f);
    std::map<int, std::set<int>> leaf_faces_by_comp;
    int total_leaves = 0;
    for (std::size_t i = 0; i < rs.verts.size(); ++i) {
        if (!rs.verts[i].is_leaf) continue;
        ++total_leaves;
        const Dart& d = rs.verts[i].cw[0];
        leaf_faces_by_comp[comp[i]].insert(face_of.at(d));
    }
    for (const auto& [c, faces] : leaf_faces_by_comp)
        if (faces.size() > 1) all_planar = false;
    if (total_leaves > 0) {
        // report a face carrying leaves (the disk boundary candidate)
        if (!leaf_faces_by_comp.empty() && leaf_faces_by_comp.begin()->second.size() == 1)
            ft.leaf_face = *leaf_faces_by_comp.begin()->second.begin();
    }
    ft.rotation_planar = all_planar;
    return ft;
}



namespace {

// vertex keys for the abstract view: nodes and leaves
struct VKey {
    int kind; // 0 node, 1 in leaf, 2 out leaf
    std::uint32_t id;
    bool operator<(const VKey& o) const { return kind != o.kind ? kind < o.kind : id < o.id; }
    bool operator==(const VKey& o) const { return kind == o.kind && id == o.id; }
};

VKey vkey(const Endpoint& e) {
    switch (e.kind) {
        case EndKind::Port: return {0, e.id};
        case EndKind::InLeaf: return {1, e.id};
        case EndKind::OutLeaf: return {2, e.id};
        default: throw GlcError("is_planar_in_disk: free loop present");
    }
}

} // namespace

bool is_planar_in_disk(const Graph& g) {
    if (g.edges().empty()) return true;
    FaceTrace ft = face_trace(g);
    if (ft.rotation_planar) return true; // the stored rotations already witness it

    // components over nodes and leaves
    std::map<VKey, VKey> parent;
    std::function<VKey(VKey)> find = [&](VKey k) -> VKey {
        auto it = parent.find(k);
        if (it == parent.end() || it->second == k) return k;
        VKey r = find(it->second);
        parent[k] = r;
        return r;
    };
    auto unite = [&](VKey a, VKey b) {
        VKey ra = find(a), rb = find(b);
        if (!(ra == rb)) parent[ra] = rb;
    };
    for (const auto& [eid, e] : g.edges()) unite(vkey(e.src), vkey(e.dst));

    std::map<VKey, std::vector<std::pair<VKey, VKey>>> comp_edges;
    std::map<VKey, std::set<VKey>> comp_verts, comp_leaves;
    for (const auto& [eid, e] : g.edges()) {
        VKey a = vkey(e.src), b = vkey(e.dst);
        VKey root = find(a);
        comp_edges[root].push_back({a, b});
        comp_verts[root].insert(a);
        comp_verts[root].insert(b);
        if (a.kind != 0) comp_leaves[root].insert(a);
        if (b.kind != 0) comp_leaves[root].insert(b);
    }
    for (const auto& [root, verts] : comp_verts) {
        std::map<VKey, int> index;
        int n = 0;
        for (const VKey& v : verts) index[v] = n++;
        std::set<std::pair<int, int>> simple;
        for (const auto& [a, b] : comp_edges[root]) {
            int ia = index[a], ib = index[b];
            if (ia == ib) continue; // self loops never affect planarity
            simple.insert({std::min(ia, ib), std::max(ia, ib)});
        }
        const auto& leaves = comp_leaves[root];
        if (!leaves.empty()) {
            int apex = n++;
            for (const VKey& l : leaves) simple.insert({index[l], apex});
        }
        if (!detail::abstract_planar(n, {simple.begin(), simple.end()})) return false;
    }
    return true;
}

} // namespace glc
