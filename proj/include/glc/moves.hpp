#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glc/graph.hpp"

namespace glc {

enum class MoveKind : std::uint8_t {
    Beta,
    CoAssoc,
    CoComm,
    R1,
    R2,
    Ext2,
    PruneLocalFanOut,
    PruneLocalApp,
    PruneLocalDil,
    PruneLocalLambda,
    Ext1,
    FanOutGlobal,
    PruneGlobal,
    LoopElim,
};

const char* move_name(MoveKind k);
std::optional<MoveKind> move_from_name(const std::string& s);
bool is_local_prune(MoveKind k);

// A matched move occurrence. `nodes` lists the pattern roles in a fixed
// per-kind order; `edges` is used by reverse Beta (the two wires to sew),
// FanOutGlobal reverse and LoopElim. `variant` selects leg handedness where
// the pattern is symmetric.
struct MoveInstance {
    MoveKind kind = MoveKind::Beta;
    bool reverse = false;
    std::vector<NodeId> nodes;
    std::vector<EdgeId> edges;
    int variant = 0;
};

struct FindOptions {
    // reverse Beta and reverse FanOutGlobal enumerate pairs of edges, which
    // is quadratic; they are only produced when this flag is set.
    bool include_expansive = false;
};

// Complete, deterministically ordered list of occurrences (by smallest
// matched node id, then port/variant).
std::vector<MoveInstance> find_matches(const Graph& g, MoveKind kind, bool reverse = false,
                                       const FindOptions& opts = {});

struct ApplyResult {
    Graph graph;
    int loops_removed = 0;
    // wires created by sewing (used by the Beta involution tests)
    std::vector<EdgeId> created_edges;
};

// Applies one move occurrence. The instance is revalidated against g; a
// stale instance (graph changed since the match) raises GlcError. Closed
// node-free loops produced by the move are erased, and local pruning
// cascades through the dead region it uncovers as part of the same
// application.
ApplyResult apply(const Graph& g, const MoveInstance& m);

struct TraceStep {
    MoveKind kind;
    bool reverse = false;
    std::vector<NodeId> nodes;
    int loops_removed = 0;
    std::string hash; // canonical hash after the step (optional)
};

struct Trace {
    std::vector<TraceStep> steps;
    bool budget_exhausted = false;

    int count(MoveKind k) const;
    int count_local_prunes() const;
    std::string format() const; // one line per step
};

// Repeatedly applies the first available match of the listed kinds (tried in
// list order) until none remain or the budget is exhausted.
struct SequenceResult {
    Graph graph;
    Trace trace;
};
SequenceResult apply_sequence(const Graph& g, const std::vector<MoveKind>& kinds, int budget,
                              bool record_hashes = false);

// Reverse global pruning: disjoint union with a graph whose root is capped
// by a fresh Top gate. `addition` must be closed (no leaves) except for one
// unwired out half: it is supplied as a graph with a single OUT leaf, which
// is replaced by the Top cap.
Graph prune_global_reverse(const Graph& g, const Graph& addition);

} // namespace glc
