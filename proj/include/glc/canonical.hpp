#pragma once

#include <cstdint>
#include <string>

#include "glc/graph.hpp"

namespace glc {

// Canonical byte string: equal iff the graphs are isomorphic as decorated
// graphs (gate kinds, dilation labels, port numbering and leaf names all
// respected). Computed by iterative refinement colouring with backtracking
// on ties, seeded from leaf names.
std::string canonical_form(const Graph& g);

bool is_isomorphic(const Graph& a, const Graph& b);

// FNV-1a over the canonical form, rendered as zero-padded hex.
std::string canonical_hash(const Graph& g, int hex_digits = 12);

} // namespace glc
