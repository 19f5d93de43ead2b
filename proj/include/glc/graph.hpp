#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "glc/group.hpp"

namespace glc {

class GlcError : public std::runtime_error {
public:
    explicit GlcError(const std::string& what) : std::runtime_error(what) {}
};

enum class GateKind : std::uint8_t { Lambda, FanOut, App, Top, Dil };

const char* gate_name(GateKind k);
std::optional<GateKind> gate_from_name(const std::string& s);

// Port signatures. Ports are numbered 1..3 and cyclically ordered
// p1 -> p2 -> p3 clockwise.
//   Lambda: p1 in (body entrant), p2 out (bound variable), p3 out (result)
//   App:    p1 in (function),     p2 in (argument),        p3 out (result)
//   FanOut: p1 in,                p2 out,                  p3 out
//   Dil:    p1 in (left operand), p2 in (right operand),   p3 out (result)
//   Top:    p1 in
int gate_arity(GateKind k);
bool port_is_input(GateKind k, int port);

struct Gate {
    GateKind kind = GateKind::Top;
    GroupElem dil_label; // meaningful iff kind == Dil

    bool operator==(const Gate& o) const {
        return kind == o.kind && (kind != GateKind::Dil || dil_label == o.dil_label);
    }
};

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Node {
    NodeId id = 0;
    Gate gate;
};

enum class EndKind : std::uint8_t { Port, InLeaf, OutLeaf, None };

struct Endpoint {
    EndKind kind = EndKind::None;
    std::uint32_t id = 0; // node id for Port, leaf index otherwise
    int port = 0;         // 1..3 for Port

    static Endpoint node_port(NodeId n, int p) { return {EndKind::Port, n, p}; }
    static Endpoint in_leaf(std::uint32_t i) { return {EndKind::InLeaf, i, 0}; }
    static Endpoint out_leaf(std::uint32_t i) { return {EndKind::OutLeaf, i, 0}; }
    static Endpoint none() { return {EndKind::None, 0, 0}; }

    bool is_port() const { return kind == EndKind::Port; }
    bool operator==(const Endpoint& o) const {
        return kind == o.kind && id == o.id && port == o.port;
    }
    bool operator<(const Endpoint& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (id != o.id) return id < o.id;
        return port < o.port;
    }
};

struct Edge {
    EdgeId id = 0;
    Endpoint src; // out-port or IN leaf
    Endpoint dst; // in-port or OUT leaf

    bool is_free_loop() const {
        return src.kind == EndKind::None && dst.kind == EndKind::None;
    }
};

struct Leaf {
    std::string name;
};

struct Violation {
    std::string message;
};

// A decorated trivalent graph with explicit IN/OUT leaves. Operations treat
// graphs as values: moves copy, mutate the copy and return it.
class Graph {
public:
    NodeId add_node(Gate gate);
    NodeId add_node_with_id(NodeId id, Gate gate);
    std::uint32_t add_in_leaf(const std::string& name);
    std::uint32_t add_out_leaf(const std::string& name);
    EdgeId add_edge(Endpoint src, Endpoint dst);
    EdgeId add_edge_with_id(EdgeId id, Endpoint src, Endpoint dst);
    // Transient closed loop (an arrow connected to nothing); removed by
    // eliminate_loops.
    EdgeId add_free_loop();

    void remove_node(NodeId id);
    void remove_edge(EdgeId id);

    const std::map<NodeId, Node>& nodes() const { return nodes_; }
    const std::map<EdgeId, Edge>& edges() const { return edges_; }
    const std::vector<Leaf>& in_leaves() const { return in_leaves_; }
    const std::vector<Leaf>& out_leaves() const { return out_leaves_; }

    const Node& node(NodeId id) const;
    const Edge& edge(EdgeId id) const;
    bool has_node(NodeId id) const { return nodes_.count(id) != 0; }
    Edge& edge_mut(EdgeId id);

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t gate_count(GateKind k) const;

    std::vector<Violation> validate() const;
    bool is_valid() const { return validate().empty(); }

    // Erases every free-standing closed loop; returns how many were removed.
    int eliminate_loops();

    std::optional<std::uint32_t> find_in_leaf(const std::string& name) const;
    std::optional<std::uint32_t> find_out_leaf(const std::string& name) const;

    NodeId next_node_id() const { return next_node_; }

private:
    std::map<NodeId, Node> nodes_;
    std::map<EdgeId, Edge> edges_;
    std::vector<Leaf> in_leaves_;
    std::vector<Leaf> out_leaves_;
    NodeId next_node_ = 1;
    EdgeId next_edge_ = 1;
};

// Port-to-edge lookup built once per graph snapshot.
class Wiring {
public:
    explicit Wiring(const Graph& g);

    // Edge whose src/dst is the given endpoint, if any.
    std::optional<EdgeId> edge_from(const Endpoint& e) const;
    std::optional<EdgeId> edge_into(const Endpoint& e) const;

    std::optional<EdgeId> edge_from_port(NodeId n, int port) const {
        return edge_from(Endpoint::node_port(n, port));
    }
    std::optional<EdgeId> edge_into_port(NodeId n, int port) const {
        return edge_into(Endpoint::node_port(n, port));
    }

    // The endpoint feeding a node's in-port / fed by a node's out-port.
    // Throws if the port is unwired.
    Endpoint feeder(const Graph& g, NodeId n, int port) const;
    Endpoint target(const Graph& g, NodeId n, int port) const;

private:
    std::map<Endpoint, EdgeId> from_, into_;
};

// Convenience builder mirroring the grafting construction: declare gates and
// leaves, then connect endpoints. build() validates.
class GraphBuilder {
public:
    NodeId gate(GateKind k, GroupElem label = {});
    Endpoint port(NodeId n, int p) const { return Endpoint::node_port(n, p); }
    Endpoint in(const std::string& name);
    Endpoint out(const std::string& name);
    void connect(Endpoint src, Endpoint dst);
    Graph build(); // throws GlcError on invalid wiring

private:
    Graph g_;
};

} // namespace glc
