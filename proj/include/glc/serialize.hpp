#pragma once

#include <string>

#include "glc/graph.hpp"

namespace glc {

// Line-oriented text format, one declaration per line ('\n' terminated):
//   in <name>
//   out <name>
//   node <id> <gate>[ <group-element>]
//   edge <id> <src> -> <dst>
// where node ids are written n<k>, edge ids e<k>, a <src>/<dst> is either
// n<k>.<port> or a leaf name, and the group element prints as a^2*b^-1 or 1.
std::string serialize(const Graph& g);

// Parses the format above; throws GlcError with a line number on parse
// errors and on graphs that fail validation after loading.
Graph deserialize(const std::string& text);

// DOT export with gate-kind shapes, port numbers as head/tail labels and
// leaves as labelled boxes.
std::string to_dot(const Graph& g);

} // namespace glc
