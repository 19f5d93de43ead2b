#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "glc/graph.hpp"

namespace glc {

struct LambdaGraphReport {
    bool ok = true;
    // on failure: the offending lambda node and a vertex reachable from its
    // bound-variable edge that can complete no path to Top or back to p1
    std::optional<NodeId> lambda_node;
    std::string witness;
};

// A graph is a lambda-graph iff it has no dilation gates and, for every
// lambda node, every vertex reachable from its bound-variable edge (port 2)
// can reach a Top gate or come back into that node's entrant port 1.
LambdaGraphReport is_lambda_graph(const Graph& g);

// One dart per edge end; faces are traced from the rotation system given by
// the clockwise port order p1, p2, p3 at every node.
struct Dart {
    EdgeId edge;
    bool at_src; // true: this dart sits at the edge's source endpoint
    bool operator==(const Dart& o) const { return edge == o.edge && at_src == o.at_src; }
    bool operator<(const Dart& o) const {
        return edge != o.edge ? edge < o.edge : at_src < o.at_src;
    }
};

struct FaceTrace {
    std::vector<std::vector<Dart>> faces;
    int genus = 0; // summed over components
    std::optional<int> leaf_face; // face index holding every leaf dart, if one exists
    // true when the stored rotation system itself is a disk embedding:
    // genus zero and, per component, all leaf darts on one face
    bool rotation_planar = false;
};

FaceTrace face_trace(const Graph& g);

// The clockwise port order used as each gate's local embedding, indexed by
// GateKind. Exposed so the drawing synthesis can stay consistent with the
// face tracer.
using GateRotation = std::array<int, 3>;
GateRotation gate_rotation(GateKind k);

// Disk planarity in the sense of the P-GRAPH definition: node decorations
// (hence their fixed local embeddings) are forgotten and the graph must
// embed in a disk with every leaf on the boundary. Decided per connected
// component: the component plus an apex vertex joined to its leaves must be
// planar. The stored rotation system is tried first as a witness.
bool is_planar_in_disk(const Graph& g);

// Directed reachability from node to node over oriented edges, skipping the
// excluded set. The empty path makes a node reachable from itself.
bool has_oriented_path(const Graph& g, NodeId from, NodeId to, const std::set<NodeId>& excluded = {});

namespace detail {
// Planarity of a simple undirected graph on vertices 0..n-1.
bool abstract_planar(int n, const std::vector<std::pair<int, int>>& edges);
} // namespace detail

} // namespace glc
