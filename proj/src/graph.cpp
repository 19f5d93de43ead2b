#include "glc/graph.hpp"

#include <algorithm>
#include <sstream>

namespace glc {

const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::Lambda: return "lambda";
        case GateKind::FanOut: return "fanout";
        case GateKind::App: return "app";
        case GateKind::Top: return "top";
        case GateKind::Dil: return "dil";
    }
    return "?";
}

std::optional<GateKind> gate_from_name(const std::string& s) {
    if (s == "lambda") return GateKind::Lambda;
    if (s == "fanout") return GateKind::FanOut;
    if (s == "app") return GateKind::App;
    if (s == "top") return GateKind::Top;
    if (s == "dil") return GateKind::Dil;
    return std::nullopt;
}

int gate_arity(GateKind k) { return k == GateKind::Top ? 1 : 3; }

bool port_is_input(GateKind k, int port) {
    switch (k) {
        case GateKind::Lambda: return port == 1;
        case GateKind::App: return port == 1 || port == 2;
        case GateKind::FanOut: return port == 1;
        case GateKind::Top: return port == 1;
        case GateKind::Dil: return port == 1 || port == 2;
    }
    return false;
}

GroupElem GroupElem::parse(const std::string& text) {
    if (text.empty()) throw GlcError("empty group element");
    if (text == "1") return GroupElem{};
    GroupElem result;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t start = i;
        while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
        if (i == start) throw GlcError("bad group element '" + text + "'");
        std::string gen = text.substr(start, i - start);
        if (!std::isalpha(static_cast<unsigned char>(gen[0])))
            throw GlcError("generator must start with a letter: '" + gen + "'");
        std::int64_t exp = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            std::size_t estart = i;
            if (i < text.size() && text[i] == '-') ++i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i == estart) throw GlcError("bad exponent in '" + text + "'");
            exp = std::stoll(text.substr(estart, i - estart));
        }
        result = result * GroupElem::generator(gen, exp);
        if (i < text.size()) {
            if (text[i] != '*') throw GlcError("expected '*' in group element '" + text + "'");
            ++i;
        }
    }
    return result;
}

NodeId Graph::add_node(Gate gate) {
    NodeId id = next_node_++;
    nodes_[id] = Node{id, std::move(gate)};
    return id;
}

NodeId Graph::add_node_with_id(NodeId id, Gate gate) {
    if (nodes_.count(id)) throw GlcError("duplicate node id");
    nodes_[id] = Node{id, std::move(gate)};
    next_node_ = std::max(next_node_, id + 1);
    return id;
}

std::uint32_t Graph::add_in_leaf(const std::string& name) {
    in_leaves_.push_back(Leaf{name});
    return static_cast<std::uint32_t>(in_leaves_.size() - 1);
}

std::uint32_t Graph::add_out_leaf(const std::string& name) {
    out_leaves_.push_back(Leaf{name});
    return static_cast<std::uint32_t>(out_leaves_.size() - 1);
}

EdgeId Graph::add_edge(Endpoint src, Endpoint dst) {
    EdgeId id = next_edge_++;
    edges_[id] = Edge{id, src, dst};
    return id;
}

EdgeId Graph::add_edge_with_id(EdgeId id, Endpoint src, Endpoint dst) {
    if (edges_.count(id)) throw GlcError("duplicate edge id");
    edges_[id] = Edge{id, src, dst};
    next_edge_ = std::max(next_edge_, id + 1);
    return id;
}

EdgeId Graph::add_free_loop() {
    return add_edge(Endpoint::none(), Endpoint::none());
}

void Graph::remove_node(NodeId id) { nodes_.erase(id); }
void Graph::remove_edge(EdgeId id) { edges_.erase(id); }

const Node& Graph::node(NodeId id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw GlcError("no such node " + std::to_string(id));
    return it->second;
}

const Edge& Graph::edge(EdgeId id) const {
    auto it = edges_.find(id);
    if (it == edges_.end()) throw GlcError("no such edge " + std::to_string(id));
    return it->second;
}

Edge& Graph::edge_mut(EdgeId id) {
    auto it = edges_.find(id);
    if (it == edges_.end()) throw GlcError("no such edge " + std::to_string(id));
    return it->second;
}

std::size_t Graph::gate_count(GateKind k) const {
    std::size_t n = 0;
    for (const auto& [id, node] : nodes_)
        if (node.gate.kind == k) ++n;
    return n;
}

std::optional<std::uint32_t> Graph::find_in_leaf(const std::string& name) const {
    for (std::uint32_t i = 0; i < in_leaves_.size(); ++i)
        if (in_leaves_[i].name == name) return i;
    return std::nullopt;
}

std::optional<std::uint32_t> Graph::find_out_leaf(const std::string& name) const {
    for (std::uint32_t i = 0; i < out_leaves_.size(); ++i)
        if (out_leaves_[i].name == name) return i;
    return std::nullopt;
}

std::vector<Violation> Graph::validate() const {
    std::vector<Violation> out;
    auto fail = [&](const std::string& m) { out.push_back(Violation{m}); };

    std::map<Endpoint, int> src_use, dst_use;
    for (const auto& [eid, e] : edges_) {
        if (e.is_free_loop()) {
            fail("edge " + std::to_string(eid) + ": free-standing loop");
            continue;
        }
        // source side
        switch (e.src.kind) {
            case EndKind::Port: {
                auto it = nodes_.find(e.src.id);
                if (it == nodes_.end()) {
                    fail("edge " + std::to_string(eid) + ": dangling source node");
                    break;
                }
                GateKind k = it->second.gate.kind;
                if (e.src.port < 1 || e.src.port > gate_arity(k))
                    fail("edge " + std::to_string(eid) + ": bad source port");
                else if (port_is_input(k, e.src.port))
                    fail("edge " + std::to_string(eid) + ": orientation mismatch, source is an in-port (node " +
                         std::to_string(e.src.id) + ".p" + std::to_string(e.src.port) + ")");
                break;
            }
            case EndKind::InLeaf:
                if (e.src.id >= in_leaves_.size())
                    fail("edge " + std::to_string(eid) + ": dangling IN leaf");
                break;
            case EndKind::OutLeaf:
                fail("edge " + std::to_string(eid) + ": orientation mismatch, OUT leaf used as source");
                break;
            case EndKind::None:
                fail("edge " + std::to_string(eid) + ": missing source");
                break;
        }
        // target side
        switch (e.dst.kind) {
            case EndKind::Port: {
                auto it = nodes_.find(e.dst.id);
                if (it == nodes_.end()) {
                    fail("edge " + std::to_string(eid) + ": dangling target node");
                    break;
                }
                GateKind k = it->second.gate.kind;
                if (e.dst.port < 1 || e.dst.port > gate_arity(k))
                    fail("edge " + std::to_string(eid) + ": bad target port");
                else if (!port_is_input(k, e.dst.port))
                    fail("edge " + std::to_string(eid) + ": orientation mismatch, target is an out-port (node " +
                         std::to_string(e.dst.id) + ".p" + std::to_string(e.dst.port) + ")");
                break;
            }
            case EndKind::OutLeaf:
                if (e.dst.id >= out_leaves_.size())
                    fail("edge " + std::to_string(eid) + ": dangling OUT leaf");
                break;
            case EndKind::InLeaf:
                fail("edge " + std::to_string(eid) + ": orientation mismatch, IN leaf used as target");
                break;
            case EndKind::None:
                fail("edge " + std::to_string(eid) + ": missing target");
                break;
        }
        if (e.src.kind != EndKind::None) src_use[e.src]++;
        if (e.dst.kind != EndKind::None) dst_use[e.dst]++;
    }

    for (const auto& [ep, n] : src_use)
        if (n > 1 && ep.is_port())
            fail("port used twice: node " + std::to_string(ep.id) + ".p" + std::to_string(ep.port));
    for (const auto& [ep, n] : dst_use)
        if (n > 1 && ep.is_port())
            fail("port used twice: node " + std::to_string(ep.id) + ".p" + std::to_string(ep.port));

    for (const auto& [nid, node] : nodes_) {
        for (int p = 1; p <= gate_arity(node.gate.kind); ++p) {
            Endpoint ep = Endpoint::node_port(nid, p);
            bool used = port_is_input(node.gate.kind, p) ? dst_use.count(ep) : src_use.count(ep);
            if (!used)
                fail("unwired port: node " + std::to_string(nid) + ".p" + std::to_string(p) +
                     " (" + gate_name(node.gate.kind) + ")");
        }
    }
    for (std::uint32_t i = 0; i < in_leaves_.size(); ++i) {
        int n = src_use.count(Endpoint::in_leaf(i)) ? src_use[Endpoint::in_leaf(i)] : 0;
        if (n != 1) fail("IN leaf '" + in_leaves_[i].name + "' used by " + std::to_string(n) + " edges");
    }
    for (std::uint32_t i = 0; i < out_leaves_.size(); ++i) {
        int n = dst_use.count(Endpoint::out_leaf(i)) ? dst_use[Endpoint::out_leaf(i)] : 0;
        if (n != 1) fail("OUT leaf '" + out_leaves_[i].name + "' used by " + std::to_string(n) + " edges");
    }
    // duplicate leaf names break the text format and iso-by-name
    for (std::uint32_t i = 0; i < in_leaves_.size(); ++i)
        for (std::uint32_t j = i + 1; j < in_leaves_.size(); ++j)
            if (in_leaves_[i].name == in_leaves_[j].name)
                fail("duplicate IN leaf name '" + in_leaves_[i].name + "'");
    for (std::uint32_t i = 0; i < out_leaves_.size(); ++i)
        for (std::uint32_t j = i + 1; j < out_leaves_.size(); ++j)
            if (out_leaves_[i].name == out_leaves_[j].name)
                fail("duplicate OUT leaf name '" + out_leaves_[i].name + "'");
    return out;
}

int Graph::eliminate_loops() {
    int removed = 0;
    for (auto it = edges_.begin(); it != edges_.end();) {
        if (it->second.is_free_loop()) {
            it = edges_.erase(it);
            ++removed;
        } else {
            ++it;
        }
    }
    return removed;
}

Wiring::Wiring(const Graph& g) {
    for (const auto& [eid, e] : g.edges()) {
        if (e.src.kind != EndKind::None) from_[e.src] = eid;
        if (e.dst.kind != EndKind::None) into_[e.dst] = eid;
    }
}

std::optional<EdgeId> Wiring::edge_from(const Endpoint& e) const {
    auto it = from_.find(e);
    if (it == from_.end()) return std::nullopt;
    return it->second;
}

std::optional<EdgeId> Wiring::edge_into(const Endpoint& e) const {
    auto it = into_.find(e);
    if (it == into_.end()) return std::nullopt;
    return it->second;
}

Endpoint Wiring::feeder(const Graph& g, NodeId n, int port) const {
    auto e = edge_into_port(n, port);
    if (!e) throw GlcError("unwired in-port");
    return g.edge(*e).src;
}

Endpoint Wiring::target(const Graph& g, NodeId n, int port) const {
    auto e = edge_from_port(n, port);
    if (!e) throw GlcError("unwired out-port");
    return g.edge(*e).dst;
}

NodeId GraphBuilder::gate(GateKind k, GroupElem label) {
    return g_.add_node(Gate{k, std::move(label)});
}

Endpoint GraphBuilder::in(const std::string& name) {
    if (auto i = g_.find_in_leaf(name)) return Endpoint::in_leaf(*i);
    return Endpoint::in_leaf(g_.add_in_leaf(name));
}

Endpoint GraphBuilder::out(const std::string& name) {
    if (auto i = g_.find_out_leaf(name)) return Endpoint::out_leaf(*i);
    return Endpoint::out_leaf(g_.add_out_leaf(name));
}

void GraphBuilder::connect(Endpoint src, Endpoint dst) { g_.add_edge(src, dst); }

Graph GraphBuilder::build() {
    auto violations = g_.validate();
    if (!violations.empty()) {
        std::ostringstream os;
        os << "invalid graph:";
        for (const auto& v : violations) os << "\n  " << v.message;
        throw GlcError(os.str());
    }
    return std::move(g_);
}

} // namespace glc
