#include "glc/encode.hpp"

#include <deque>
#include <sstream>

namespace glc {

std::string path_word_str(const PathWord& w) {
    std::ostringstream os;
    for (const auto& l : w) {
        switch (l.gate) {
            case GateKind::Lambda: os << "λ"; break;
            case GateKind::App: os << "⋏"; break;
            case GateKind::Dil: os << "ε"; break;
            default: os << "?"; break;
        }
        os << "^" << (l.left ? "L" : "R");
    }
    return os.str();
}

namespace {

void bound_list_rec(const TermPtr& t, PathWord& path, BoundList& out) {
    switch (t->kind) {
        case TermKind::Var:
            break;
        case TermKind::Lam: {
            // the binder leaf hangs on the lambda's left leg and is visited
            // before the body's leaves
            PathWord w;
            w.push_back({GateKind::Lambda, true});
            w.insert(w.end(), path.rbegin(), path.rend());
            out.push_back({t->name, std::move(w)});
            path.push_back({GateKind::Lambda, false});
            bound_list_rec(t->a, path, out);
            path.pop_back();
            break;
        }
        case TermKind::App:
        case TermKind::Eps:
        case TermKind::DilOp: {
            GateKind gk = t->kind == TermKind::App ? GateKind::App : GateKind::Dil;
            path.push_back({gk, true});
            bound_list_rec(t->a, path, out);
            path.back().left = false;
            bound_list_rec(t->b, path, out);
            path.pop_back();
            break;
        }
    }
}

} // namespace

BoundList bound_list(const TermPtr& t) {
    BoundList out;
    PathWord path; // root-to-here, reversed on emission
    bound_list_rec(t, path, out);
    return out;
}

namespace {

struct TreeBuilder {
    Graph g;
    std::map<std::string, std::string> decoration;
    int leaf_counter = 0;

    // returns the endpoint producing the subterm's value
    Endpoint build(const TermPtr& t) {
        switch (t->kind) {
            case TermKind::Var: {
                std::string name = "v" + std::to_string(++leaf_counter);
                decoration[name] = t->name;
                return Endpoint::in_leaf(g.add_in_leaf(name));
            }
            case TermKind::Lam: {
                NodeId L = g.add_node(Gate{GateKind::Lambda, {}});
                std::string name = "b" + std::to_string(++leaf_counter);
                decoration[name] = t->name;
                g.add_edge(Endpoint::node_port(L, 2), Endpoint::out_leaf(g.add_out_leaf(name)));
                g.add_edge(build(t->a), Endpoint::node_port(L, 1));
                return Endpoint::node_port(L, 3);
            }
            case TermKind::App:
            case TermKind::DilOp: {
                GateKind gk = t->kind == TermKind::App ? GateKind::App : GateKind::Dil;
                Gate gate{gk, t->label};
                NodeId n = g.add_node(gate);
                g.add_edge(build(t->a), Endpoint::node_port(n, 1));
                g.add_edge(build(t->b), Endpoint::node_port(n, 2));
                return Endpoint::node_port(n, 3);
            }
            case TermKind::Eps:
                throw GlcError("syntactic_tree: rewrite epsilon operations first (encode_lambda_scale)");
        }
        throw GlcError("unreachable");
    }
};

struct Encoder {
    Graph g;
    FanOutPolicy policy;
    // binder scope stack: name -> stack of collected occurrence in-ports
    std::map<std::string, std::vector<std::vector<Endpoint>*>> scope;
    // free variable occurrences in first-occurrence order
    std::vector<std::pair<std::string, std::vector<Endpoint>>> free_occ;

    explicit Encoder(FanOutPolicy p) : policy(p) {}

    void record_occurrence(const std::string& name, Endpoint target) {
        auto it = scope.find(name);
        if (it != scope.end() && !it->second.empty()) {
            it->second.back()->push_back(target);
            return;
        }
        for (auto& [n, occ] : free_occ) {
            if (n == name) {
                occ.push_back(target);
                return;
            }
        }
        free_occ.emplace_back(name, std::vector<Endpoint>{target});
    }

    // Wires `source` into every collected occurrence, inserting a FanOut
    // tree when there is more than one.
    void distribute(Endpoint source, const std::vector<Endpoint>& targets) {
        if (targets.empty()) {
            NodeId T = g.add_node(Gate{GateKind::Top, {}});
            g.add_edge(source, Endpoint::node_port(T, 1));
            return;
        }
        std::deque<Endpoint> rest(targets.begin(), targets.end());
        Endpoint feed = source;
        if (policy == FanOutPolicy::RightComb) {
            while (rest.size() > 1) {
                NodeId F = g.add_node(Gate{GateKind::FanOut, {}});
                g.add_edge(feed, Endpoint::node_port(F, 1));
                g.add_edge(Endpoint::node_port(F, 2), rest.front());
                rest.pop_front();
                feed = Endpoint::node_port(F, 3);
            }
        } else {
            while (rest.size() > 1) {
                NodeId F = g.add_node(Gate{GateKind::FanOut, {}});
                g.add_edge(feed, Endpoint::node_port(F, 1));
                g.add_edge(Endpoint::node_port(F, 3), rest.back());
                rest.pop_back();
                feed = Endpoint::node_port(F, 2);
            }
        }
        g.add_edge(feed, rest.front());
    }

    // returns the endpoint producing the subterm's value
    Endpoint build(const TermPtr& t) {
        switch (t->kind) {
            case TermKind::Var: {
                // the occurrence's consumer is wired later; hand back a
                // placeholder resolved by the caller
                throw GlcError("unreachable: variables are handled at use sites");
            }
            case TermKind::Lam: {
                NodeId L = g.add_node(Gate{GateKind::Lambda, {}});
                std::vector<Endpoint> occurrences;
                scope[t->name].push_back(&occurrences);
                wire_child(t->a, Endpoint::node_port(L, 1));
                scope[t->name].pop_back();
                distribute(Endpoint::node_port(L, 2), occurrences);
                return Endpoint::node_port(L, 3);
            }
            case TermKind::App:
            case TermKind::DilOp: {
                GateKind gk = t->kind == TermKind::App ? GateKind::App : GateKind::Dil;
                NodeId n = g.add_node(Gate{gk, t->label});
                wire_child(t->a, Endpoint::node_port(n, 1));
                wire_child(t->b, Endpoint::node_port(n, 2));
                return Endpoint::node_port(n, 3);
            }
            case TermKind::Eps:
                throw GlcError("encode: epsilon operations must be rewritten first");
        }
        throw GlcError("unreachable");
    }

    void wire_child(const TermPtr& t, Endpoint target) {
        if (t->kind == TermKind::Var) {
            record_occurrence(t->name, target);
            return;
        }
        g.add_edge(build(t), target);
    }

    Graph run(const TermPtr& t) {
        std::uint32_t out_leaf = g.add_out_leaf("out");
        wire_child(t, Endpoint::out_leaf(out_leaf));
        // step 3: group repeated free variables under one IN leaf each
        for (const auto& [name, occ] : free_occ) {
            Endpoint leaf = Endpoint::in_leaf(g.add_in_leaf(name));
            distribute(leaf, occ);
        }
        auto violations = g.validate();
        if (!violations.empty()) {
            std::ostringstream os;
            os << "encoder produced an invalid graph:";
            for (const auto& v : violations) os << "\n  " << v.message;
            throw GlcError(os.str());
        }
        return std::move(g);
    }
};

} // namespace

SyntacticTree syntactic_tree(const TermPtr& t) {
    TreeBuilder tb;
    std::uint32_t root = tb.g.add_out_leaf("root");
    tb.g.add_edge(tb.build(t), Endpoint::out_leaf(root));
    return SyntacticTree{std::move(tb.g), std::move(tb.decoration)};
}

Graph encode(const TermPtr& t, FanOutPolicy policy) {
    if (contains_scale_ops(t))
        throw GlcError("encode: term uses lambda-Scale operations, use encode_lambda_scale");
    Encoder enc(policy);
    return enc.run(t);
}

TermPtr rewrite_eps(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var: return t;
        case TermKind::Lam: return Term::lam(t->name, rewrite_eps(t->a));
        case TermKind::App: return Term::app(rewrite_eps(t->a), rewrite_eps(t->b));
        case TermKind::DilOp: return Term::dil(t->label, rewrite_eps(t->a), rewrite_eps(t->b));
        case TermKind::Eps: {
            // X e Y  ->  Y ~e (Y X), the dilation form of the operation
            TermPtr x = rewrite_eps(t->a);
            TermPtr y = rewrite_eps(t->b);
            if (t->label.is_identity()) return Term::app(x, y);
            return Term::dil(t->label, y, Term::app(y, x));
        }
    }
    return t;
}

Graph encode_lambda_scale(const TermPtr& t, FanOutPolicy policy) {
    Encoder enc(policy);
    return enc.run(rewrite_eps(t));
}

} // namespace glc
