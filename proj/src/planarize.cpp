#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "glc/predicates.hpp"
#include "glc/reduce.hpp"

namespace glc {

namespace {

struct Vec2 {
    double x = 0, y = 0;
};

Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

struct Layout {
    std::map<NodeId, Vec2> node_pos;
    std::map<std::uint32_t, Vec2> in_pos, out_pos;

    Vec2 at(const Graph&, const Endpoint& e) const {
        switch (e.kind) {
            case EndKind::Port: return node_pos.at(e.id);
            case EndKind::InLeaf: return in_pos.at(e.id);
            case EndKind::OutLeaf: return out_pos.at(e.id);
            default: throw GlcError("planarize: free loop");
        }
    }
};

Layout make_layout(const Graph& g, unsigned attempt) {
    Layout lay;
    std::mt19937_64 rng(0x9e3779b9u + attempt * 7919u);
    std::uniform_real_distribution<double> jitter(-0.03, 0.03);
    std::size_t nleaves = g.in_leaves().size() + g.out_leaves().size();
    std::size_t slot = 0;
    auto circle = [&](double r, double frac, double eps) {
        double a = 2.0 * M_PI * frac + eps;
        return Vec2{r * std::cos(a), r * std::sin(a)};
    };
    for (std::uint32_t i = 0; i < g.in_leaves().size(); ++i, ++slot)
        lay.in_pos[i] = circle(1.0, double(slot) / std::max<std::size_t>(nleaves, 1), jitter(rng) * 0.2);
    for (std::uint32_t i = 0; i < g.out_leaves().size(); ++i, ++slot)
        lay.out_pos[i] = circle(1.0, double(slot) / std::max<std::size_t>(nleaves, 1), jitter(rng) * 0.2);
    std::size_t n = g.nodes().size(), k = 0;
    for (const auto& [nid, node] : g.nodes()) {
        double r = 0.25 + 0.3 * ((k * 2654435761u % 97) / 96.0);
        lay.node_pos[nid] = circle(r + jitter(rng) * 0.1, (double(k) + 0.31) / std::max<std::size_t>(n, 1),
                                   jitter(rng));
        ++k;
    }
    return lay;
}

struct Seg {
    EdgeId edge;
    Vec2 a, b; // src -> dst
    bool self = false;
};

// proper interior intersection; returns params along both segments
bool intersect(const Seg& s, const Seg& t, double& u, double& v) {
    Vec2 r = s.b - s.a, q = t.b - t.a;
    double den = cross(r, q);
    if (std::abs(den) < 1e-12) return false;
    Vec2 d = t.a - s.a;
    u = cross(d, q) / den;
    v = cross(d, r) / den;
    return u > 1e-9 && u < 1.0 - 1e-9 && v > 1e-9 && v < 1.0 - 1e-9;
}

struct CrossingEvent {
    EdgeId e1, e2;
    double t1, t2;
    bool flip; // which wire takes the lambda side
};


} // namespace

PlanarizeResult planarize(const Graph& g0) {
    PlanarizeResult res;
    res.graph = g0;
    Graph& g = res.graph;
    if (g.edges().empty()) return res;
    for (const auto& [eid, e] : g.edges())
        if (e.is_free_loop()) throw GlcError("planarize: eliminate free loops first");
    if (is_planar_in_disk(g)) return res; // already embeddable, nothing to do

    // Synthesize a generic drawing, retrying the jitter on degeneracy. Each
    // edge is a three-segment polyline: node centre, a small per-edge
    // attachment offset at either end, node centre. The offsets separate
    // parallel edges while the stub segments keep every wire attached to its
    // vertex, so all crossings of the arrangement are visible.
    Layout lay;
    std::vector<CrossingEvent> events;
    for (unsigned attempt = 0;; ++attempt) {
        if (attempt > 200) throw GlcError("planarize: could not reach a generic drawing");
        lay = make_layout(g, attempt);
        auto offset = [&](EdgeId eid, bool at_src) {
            double a = 2.399963 * (eid * 2.0 + (at_src ? 0.0 : 1.0)) + attempt * 0.7;
            return Vec2{0.004 * std::cos(a), 0.004 * std::sin(a)};
        };
        struct PolySeg {
            EdgeId edge;
            int part; // 0, 1, 2 along the polyline
            Vec2 a, b;
        };
        std::vector<PolySeg> segs;
        for (const auto& [eid, e] : g.edges()) {
            Vec2 pa = lay.at(g, e.src), pb = lay.at(g, e.dst);
            Vec2 oa = offset(eid, true), ob = offset(eid, false);
            Vec2 qa{pa.x + oa.x, pa.y + oa.y};
            Vec2 qb{pb.x + ob.x, pb.y + ob.y};
            segs.push_back({eid, 0, pa, qa});
            segs.push_back({eid, 1, qa, qb});
            segs.push_back({eid, 2, qb, pb});
        }
        events.clear();
        bool degenerate = false;
        for (std::size_t i = 0; i < segs.size() && !degenerate; ++i) {
            for (std::size_t j = i + 1; j < segs.size(); ++j) {
                if (segs[i].edge == segs[j].edge) continue;
                Vec2 r = segs[i].b - segs[i].a, q = segs[j].b - segs[j].a;
                if (std::abs(cross(r, q)) < 1e-12) continue; // parallels never intersect properly
                Seg si{segs[i].edge, segs[i].a, segs[i].b, false};
                Seg sj{segs[j].edge, segs[j].a, segs[j].b, false};
                double u, v;
                if (intersect(si, sj, u, v)) {
                    if (u < 1e-5 || u > 1 - 1e-5 || v < 1e-5 || v > 1 - 1e-5) {
                        degenerate = true;
                        break;
                    }
                    double t1 = (segs[i].part + u) / 3.0;
                    double t2 = (segs[j].part + v) / 3.0;
                    events.push_back({segs[i].edge, segs[j].edge, t1, t2, cross(r, q) < 0});
                }
            }
        }
        if (!degenerate) {
            // coincident crossing points along one edge break the
            // subdivision order; retry on parameter ties
            std::map<EdgeId, std::vector<double>> params;
            for (const auto& ev : events) {
                params[ev.e1].push_back(ev.t1);
                params[ev.e2].push_back(ev.t2);
            }
            for (auto& [eid, ts] : params) {
                std::sort(ts.begin(), ts.end());
                for (std::size_t i = 0; i + 1 < ts.size(); ++i)
                    if (ts[i + 1] - ts[i] < 1e-9) degenerate = true;
            }
        }
        if (degenerate) continue;
        break;
    }
    res.crossings = static_cast<int>(events.size());

    // subdivide each edge at its crossings, one lambda/app pair per event
    struct Stop {
        double t;
        std::size_t event;
        bool first_role; // this edge is the event's e1
    };
    std::map<EdgeId, std::vector<Stop>> stops;
    for (std::size_t i = 0; i < events.size(); ++i) {
        stops[events[i].e1].push_back({events[i].t1, i, true});
        stops[events[i].e2].push_back({events[i].t2, i, false});
    }
    // the lambda side of each event: role1 takes L.p1 in / C.p3 out, role2
    // takes C.p2 in / L.p2 out; the drawing's crossing sign picks the side
    struct Gadget {
        NodeId L = 0, C = 0;
    };
    std::vector<Gadget> gadgets(events.size());
    for (std::size_t i = 0; i < events.size(); ++i) {
        Gadget gd;
        gd.L = g.add_node(Gate{GateKind::Lambda, {}});
        gd.C = g.add_node(Gate{GateKind::App, {}});
        g.add_edge(Endpoint::node_port(gd.L, 3), Endpoint::node_port(gd.C, 1));
        gadgets[i] = gd;
        TraceStep ts{MoveKind::Beta, true, {gd.L, gd.C}, 0, ""};
        res.trace.steps.push_back(ts);
    }
    for (auto& [eid, evs] : stops) {
        std::sort(evs.begin(), evs.end(), [](const Stop& a, const Stop& b) { return a.t < b.t; });
        Endpoint cur = g.edge(eid).src;
        Endpoint final_dst = g.edge(eid).dst;
        g.remove_edge(eid);
        for (const Stop& st : evs) {
            const CrossingEvent& ev = events[st.event];
            const Gadget& gd = gadgets[st.event];
            bool lambda_role = st.first_role != ev.flip;
            Endpoint in = lambda_role ? Endpoint::node_port(gd.L, 1) : Endpoint::node_port(gd.C, 2);
            Endpoint out = lambda_role ? Endpoint::node_port(gd.C, 3) : Endpoint::node_port(gd.L, 2);
            g.add_edge(cur, in);
            cur = out;
        }
        g.add_edge(cur, final_dst);
    }

    auto violations = g.validate();
    if (!violations.empty())
        throw GlcError("planarize produced an invalid graph: " + violations[0].message);
    return res;
}

} // namespace glc
