#pragma once

#include <string>
#include <vector>

#include "glc/graph.hpp"
#include "glc/term.hpp"

namespace glc {

// One letter of a leaf-to-root path word: which gate the path passes
// through and on which side it enters it.
struct PathLetter {
    GateKind gate; // Lambda, App or Dil
    bool left;

    bool operator==(const PathLetter& o) const { return gate == o.gate && left == o.left; }
};

using PathWord = std::vector<PathLetter>;

std::string path_word_str(const PathWord& w);

// The list B of bound variables: one entry per binder leaf, in left-to-right
// leaf order, with the leaf-to-root path word.
struct BoundEntry {
    std::string name;
    PathWord word;
};
using BoundList = std::vector<BoundEntry>;

BoundList bound_list(const TermPtr& t);

// Syntactic tree of a term: a tree-shaped graph whose variable positions are
// decorated leaves (an intermediate object, not a member of GRAPH). Binder
// positions hang from the lambda's variable leg as OUT leaves; occurrences
// feed their parent gate as IN leaves.
struct SyntacticTree {
    Graph graph;
    // leaf name -> variable it is decorated with
    std::map<std::string, std::string> decoration;
};

SyntacticTree syntactic_tree(const TermPtr& t);

enum class FanOutPolicy { RightComb, LeftComb };

// The three-step conversion from terms to GRAPH. Bound variables become
// direct wires, FanOut trees or Top caps; repeated free variables share a
// FanOut tree under a single IN leaf; the root is the unique OUT leaf "out".
// Terms containing the surface epsilon operation or dilations are rejected:
// use encode_lambda_scale for those.
Graph encode(const TermPtr& t, FanOutPolicy policy = FanOutPolicy::RightComb);

// Rewrites every epsilon operation X e Y into the dilation form
// Y ~e (Y X), then encodes with Dil treated as a binary gate.
Graph encode_lambda_scale(const TermPtr& t, FanOutPolicy policy = FanOutPolicy::RightComb);

// The dilation-form rewrite used by encode_lambda_scale, exposed for tests.
TermPtr rewrite_eps(const TermPtr& t);

} // namespace glc
