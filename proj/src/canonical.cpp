#include "glc/canonical.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

namespace glc {

namespace {

struct Vertex {
    // 0 = gate node, 1 = IN leaf, 2 = OUT leaf
    int klass = 0;
    std::string tag;             // gate name + label, or leaf name
    NodeId node_id = 0;          // for rendering edges
    std::uint32_t leaf_index = 0;
    // neighbours[slot] = (other vertex index, other slot, direction out?)
    // slot = port-1 for nodes, 0 for leaves.
    struct Link {
        int other = -1;
        int other_slot = 0;
        bool outgoing = false;
    };
    std::vector<Link> links;
};

struct Instance {
    std::vector<Vertex> verts;
    std::map<NodeId, int> node_index;
};

Instance flatten(const Graph& g) {
    Instance inst;
    for (const auto& [nid, node] : g.nodes()) {
        Vertex v;
        v.klass = 0;
        v.tag = gate_name(node.gate.kind);
        if (node.gate.kind == GateKind::Dil) v.tag += ":" + node.gate.dil_label.str();
        v.node_id = nid;
        v.links.resize(gate_arity(node.gate.kind));
        inst.node_index[nid] = static_cast<int>(inst.verts.size());
        inst.verts.push_back(std::move(v));
    }
    std::vector<int> in_idx, out_idx;
    for (std::uint32_t i = 0; i < g.in_leaves().size(); ++i) {
        Vertex v;
        v.klass = 1;
        v.tag = g.in_leaves()[i].name;
        v.leaf_index = i;
        v.links.resize(1);
        in_idx.push_back(static_cast<int>(inst.verts.size()));
        inst.verts.push_back(std::move(v));
    }
    for (std::uint32_t i = 0; i < g.out_leaves().size(); ++i) {
        Vertex v;
        v.klass = 2;
        v.tag = g.out_leaves()[i].name;
        v.leaf_index = i;
        v.links.resize(1);
        out_idx.push_back(static_cast<int>(inst.verts.size()));
        inst.verts.push_back(std::move(v));
    }
    auto resolve = [&](const Endpoint& e) -> std::pair<int, int> {
        switch (e.kind) {
            case EndKind::Port: return {inst.node_index.at(e.id), e.port - 1};
            case EndKind::InLeaf: return {in_idx.at(e.id), 0};
            case EndKind::OutLeaf: return {out_idx.at(e.id), 0};
            default: throw GlcError("canonical_form: free loop present");
        }
    };
    for (const auto& [eid, e] : g.edges()) {
        auto [si, ss] = resolve(e.src);
        auto [di, ds] = resolve(e.dst);
        inst.verts[si].links[ss] = {di, ds, true};
        inst.verts[di].links[ds] = {si, ss, false};
    }
    return inst;
}

using Colors = std::vector<std::uint64_t>;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

std::uint64_t str_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Colors initial_colors(const Instance& inst) {
    Colors c(inst.verts.size());
    for (std::size_t i = 0; i < inst.verts.size(); ++i) {
        const Vertex& v = inst.verts[i];
        c[i] = mix(str_hash(v.tag), static_cast<std::uint64_t>(v.klass) * 0x51ed2701);
    }
    return c;
}

void refine(const Instance& inst, Colors& c) {
    for (std::size_t round = 0; round < inst.verts.size() + 2; ++round) {
        Colors next(c.size());
        for (std::size_t i = 0; i < inst.verts.size(); ++i) {
            std::uint64_t h = c[i];
            const Vertex& v = inst.verts[i];
            for (std::size_t s = 0; s < v.links.size(); ++s) {
                const auto& l = v.links[s];
                std::uint64_t part = mix(mix(static_cast<std::uint64_t>(s) + 1,
                                             static_cast<std::uint64_t>(l.other_slot) + 7),
                                         l.outgoing ? 0xabcd : 0x1234);
                part = mix(part, l.other >= 0 ? c[l.other] : 0xdead);
                h = mix(h, part);
            }
            next[i] = h;
        }
        if (next == c) break;
        c = std::move(next);
    }
}

// Map colors to dense ranks (deterministic, order by color value).
std::vector<int> ranks_of(const Colors& c) {
    std::vector<std::uint64_t> sorted(c.begin(), c.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        r[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), c[i]) - sorted.begin());
    return r;
}

std::string render(const Instance& inst, const std::vector<int>& order_rank) {
    // order_rank[i] = position of vertex i in the canonical order
    std::vector<int> by_pos(order_rank.size());
    for (std::size_t i = 0; i < order_rank.size(); ++i) by_pos[order_rank[i]] = static_cast<int>(i);
    std::ostringstream os;
    for (std::size_t p = 0; p < by_pos.size(); ++p) {
        const Vertex& v = inst.verts[by_pos[p]];
        os << "v" << p << " " << v.klass << " " << v.tag << ";";
    }
    std::vector<std::string> edge_lines;
    for (std::size_t i = 0; i < inst.verts.size(); ++i) {
        const Vertex& v = inst.verts[i];
        for (std::size_t s = 0; s < v.links.size(); ++s) {
            const auto& l = v.links[s];
            if (l.other < 0 || !l.outgoing) continue;
            std::ostringstream e;
            e << "e " << order_rank[i] << "." << s << ">" << order_rank[l.other] << "." << l.other_slot << ";";
            edge_lines.push_back(e.str());
        }
    }
    std::sort(edge_lines.begin(), edge_lines.end());
    for (const auto& l : edge_lines) os << l;
    return os.str();
}

struct Search {
    const Instance& inst;
    std::string best;
    bool have_best = false;

    explicit Search(const Instance& i) : inst(i) {}

    void run(Colors colors, int depth) {
        refine(inst, colors);
        auto r = ranks_of(colors);
        // group vertices by rank
        std::map<int, std::vector<int>> cells;
        for (std::size_t i = 0; i < r.size(); ++i) cells[r[i]].push_back(static_cast<int>(i));
        // find smallest non-singleton cell
        const std::vector<int>* split = nullptr;
        for (const auto& [rank, members] : cells) {
            if (members.size() > 1 && (!split || members.size() < split->size())) split = &members;
        }
        if (!split) {
            std::string s = render(inst, r);
            if (!have_best || s < best) {
                best = std::move(s);
                have_best = true;
            }
            return;
        }
        if (depth > 24) {
            // pathological symmetry; individualize only the first member to
            // stay deterministic (graphs at desk scale never reach this)
            Colors c2 = colors;
            c2[(*split)[0]] = mix(c2[(*split)[0]], 0xfeedull + depth);
            run(std::move(c2), depth + 1);
            return;
        }
        for (int m : *split) {
            Colors c2 = colors;
            c2[m] = mix(c2[m], 0xfeedull + depth);
            run(std::move(c2), depth + 1);
        }
    }
};

} // namespace

std::string canonical_form(const Graph& g) {
    Instance inst = flatten(g);
    if (inst.verts.empty()) return "empty";
    Search search(inst);
    search.run(initial_colors(inst), 0);
    return search.best;
}

bool is_isomorphic(const Graph& a, const Graph& b) {
    return canonical_form(a) == canonical_form(b);
}

std::string canonical_hash(const Graph& g, int hex_digits) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical_form(g)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (int i = 0; i < hex_digits && i < 16; ++i) {
        out += hex[(h >> (60 - 4 * i)) & 0xf];
    }
    return out;
}

} // namespace glc
