#pragma once

#include <algorithm>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "glc/graph.hpp"
#include "glc/term.hpp"

namespace glc::testing {

inline std::uint64_t test_seed() {
    if (const char* s = std::getenv("GLC_SEED")) return std::strtoull(s, nullptr, 10);
    return 0x51ab5eedULL;
}

using Rng = std::mt19937_64;

// Random lambda term with free variables drawn from `scope`; closed when the
// initial scope is empty. `size` is an upper bound on AST nodes.
inline TermPtr random_term(Rng& rng, int size, std::vector<std::string> scope,
                           int* fresh_counter) {
    auto var_name = [&](int i) { return "v" + std::to_string(i); };
    std::uniform_int_distribution<int> pick(0, 99);
    if (size <= 1) {
        if (!scope.empty()) {
            std::uniform_int_distribution<std::size_t> iv(0, scope.size() - 1);
            return Term::var(scope[iv(rng)]);
        }
        std::string x = var_name((*fresh_counter)++);
        return Term::lam(x, Term::var(x));
    }
    int r = pick(rng);
    if (scope.empty() || r < 35) {
        std::string x = var_name((*fresh_counter)++);
        auto inner = scope;
        inner.push_back(x);
        return Term::lam(x, random_term(rng, size - 1, std::move(inner), fresh_counter));
    }
    if (r < 75) {
        int left = 1 + static_cast<int>(rng() % std::max(1, size - 2));
        return Term::app(random_term(rng, left, scope, fresh_counter),
                         random_term(rng, size - 1 - left, scope, fresh_counter));
    }
    std::uniform_int_distribution<std::size_t> iv(0, scope.size() - 1);
    return Term::var(scope[iv(rng)]);
}

inline TermPtr random_closed_term(Rng& rng, int size) {
    int fresh = 0;
    return random_term(rng, size, {}, &fresh);
}

// Random valid graph: a soup of gates wired so every in-port has a source
// and every out-port a target, spilling the remainder into leaves.
inline Graph random_graph(Rng& rng, int max_nodes) {
    Graph g;
    std::uniform_int_distribution<int> nnodes(1, max_nodes);
    std::uniform_int_distribution<int> gate_pick(0, 4);
    int n = nnodes(rng);
    std::vector<Endpoint> outs, ins;
    for (int i = 0; i < n; ++i) {
        GateKind k{};
        switch (gate_pick(rng)) {
            case 0: k = GateKind::Lambda; break;
            case 1: k = GateKind::FanOut; break;
            case 2: k = GateKind::App; break;
            case 3: k = GateKind::Top; break;
            default: k = GateKind::Dil; break;
        }
        Gate gate{k, k == GateKind::Dil ? GroupElem::generator("a") : GroupElem{}};
        NodeId id = g.add_node(gate);
        for (int p = 1; p <= gate_arity(k); ++p)
            (port_is_input(k, p) ? ins : outs).push_back(Endpoint::node_port(id, p));
    }
    std::shuffle(outs.begin(), outs.end(), rng);
    std::shuffle(ins.begin(), ins.end(), rng);
    std::size_t wired = std::min(outs.size(), ins.size());
    // keep a few ports for leaves so the boundary is nonempty
    std::size_t keep = wired > 2 ? rng() % 3 : 0;
    wired -= keep;
    for (std::size_t i = 0; i < wired; ++i) g.add_edge(outs[i], ins[i]);
    int leaf = 0;
    for (std::size_t i = wired; i < outs.size(); ++i)
        g.add_edge(outs[i], Endpoint::out_leaf(g.add_out_leaf("o" + std::to_string(leaf++))));
    for (std::size_t i = wired; i < ins.size(); ++i)
        g.add_edge(Endpoint::in_leaf(g.add_in_leaf("i" + std::to_string(leaf++))), ins[i]);
    return g;
}

} // namespace glc::testing
