#pragma once

#include <string>
#include <vector>

#include "glc/encode.hpp"
#include "glc/graph.hpp"
#include "glc/moves.hpp"

namespace glc {

struct Strategy {
    // tried in order; the first kind with a match fires
    std::vector<MoveKind> kinds;
    int budget = 1000;
    bool normalize_after = false;
    bool record_hashes = false;

    static Strategy lambda_default(int budget = 1000);
    static Strategy reidemeister(int budget = 1000);
};

struct ReduceResult {
    Graph graph;
    Trace trace;
};

ReduceResult reduce(const Graph& g, const Strategy& s);

// Rewrites every maximal FanOut tree to right-comb shape, keeping the
// leaves in tree order. FanOut clusters that close on themselves are left
// alone. Idempotent up to isomorphism.
Graph normalize_coassoc(const Graph& g);

// Theorem-style structural equality: both sides are pruned exhaustively
// (local cascades plus global pruning), bottlenecked subgraphs are fanned
// out forward, FanOut trees are normalized, then the results are compared
// up to isomorphism.
bool equivalent_mod_structure(const Graph& a, const Graph& b);
Graph structural_normalize(const Graph& g);

// ------------------------------------------------------------ standard library

Graph combinator(char which); // 'I', 'K', 'S'
Graph church(int n);
Graph succ_graph();
Graph plus_graph();
Graph omega_graph();

// A two-input/two-output crossing gadget: the right strand passes through
// unchanged and the left strand exits as a dilation by it. Stacking
// crossing(e) on crossing_inv(e) reduces to two parallel wires.
Graph crossing(const GroupElem& eps);
Graph crossing_inv(const GroupElem& eps);

// Closed, reduction-inert one-output gadget used as an opaque operand in
// combinator demonstrations; the label makes distinct boxes distinguishable.
Graph box_graph(const GroupElem& label);

// Grafts the single outputs of a and b into an application gate. Both
// graphs must be closed (no IN leaves) with exactly one OUT leaf.
Graph compose_app(const Graph& a, const Graph& b);

// Builder expressions for the CLI and the demo manifest:
//   I | K | S | church(3) | succ | plus | omega | box(a) | app(X,Y) | wire
Graph build_named(const std::string& expr);

// ------------------------------------------------------------ derived moves

struct ProofResult {
    bool ok = false;
    Graph graph;
    Trace trace;
    std::string detail;
};

// Constructs the k-fold zipper gadget of the planar beta move family and
// resolves it with exactly k graphic beta moves (P1: 1, P2: 2, P3: 3),
// checking the result is the matching bundle of parallel wires.
ProofResult verify_planar_beta(int variant);

// Stacks crossing(eps) on crossing_inv(eps) and reduces with the
// Reidemeister strategy; succeeds iff the result is two parallel wires.
ProofResult verify_reidemeister_ii(const GroupElem& eps);

// ------------------------------------------------------------ planarization

struct PlanarizeResult {
    Graph graph;
    Trace trace; // one reverse-beta step per eliminated crossing
    int crossings = 0;
};

// Synthesizes a drawing (leaves on a circle, nodes inside, straight edges,
// deterministic generic perturbation) and replaces each of its crossings by
// a lambda/app pair via one reverse beta insertion. The result embeds in a
// disk with all leaves on the boundary.
PlanarizeResult planarize(const Graph& g);

} // namespace glc
