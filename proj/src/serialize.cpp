#include "glc/serialize.hpp"

#include <sstream>
#include <vector>

namespace glc {

namespace {

std::string endpoint_str(const Graph& g, const Endpoint& e) {
    switch (e.kind) {
        case EndKind::Port:
            return "n" + std::to_string(e.id) + "." + std::to_string(e.port);
        case EndKind::InLeaf:
            return g.in_leaves()[e.id].name;
        case EndKind::OutLeaf:
            return g.out_leaves()[e.id].name;
        default:
            throw GlcError("cannot serialize a free loop");
    }
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

} // namespace

std::string serialize(const Graph& g) {
    std::ostringstream os;
    for (const auto& l : g.in_leaves()) os << "in " << l.name << "\n";
    for (const auto& l : g.out_leaves()) os << "out " << l.name << "\n";
    for (const auto& [id, n] : g.nodes()) {
        os << "node n" << id << " " << gate_name(n.gate.kind);
        if (n.gate.kind == GateKind::Dil) os << " " << n.gate.dil_label.str();
        os << "\n";
    }
    for (const auto& [id, e] : g.edges()) {
        os << "edge e" << id << " " << endpoint_str(g, e.src) << " -> " << endpoint_str(g, e.dst) << "\n";
    }
    return os.str();
}

Graph deserialize(const std::string& text) {
    Graph g;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;

    auto err = [&](const std::string& m) -> GlcError {
        return GlcError("line " + std::to_string(lineno) + ": " + m);
    };
    auto parse_endpoint = [&](const std::string& s, bool as_src) -> Endpoint {
        if (s.size() >= 2 && s[0] == 'n' && std::isdigit(static_cast<unsigned char>(s[1]))) {
            auto dot = s.find('.');
            if (dot != std::string::npos) {
                NodeId nid = 0;
                int port = 0;
                try {
                    nid = static_cast<NodeId>(std::stoul(s.substr(1, dot - 1)));
                    port = std::stoi(s.substr(dot + 1));
                } catch (...) {
                    throw err("bad endpoint '" + s + "'");
                }
                if (!g.has_node(nid)) throw err("endpoint references undeclared node '" + s + "'");
                return Endpoint::node_port(nid, port);
            }
        }
        if (as_src) {
            if (auto i = g.find_in_leaf(s)) return Endpoint::in_leaf(*i);
            throw err("unknown IN leaf '" + s + "'");
        }
        if (auto i = g.find_out_leaf(s)) return Endpoint::out_leaf(*i);
        throw err("unknown OUT leaf '" + s + "'");
    };

    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "in") {
            if (toks.size() != 2) throw err("expected: in <name>");
            g.add_in_leaf(toks[1]);
        } else if (toks[0] == "out") {
            if (toks.size() != 2) throw err("expected: out <name>");
            g.add_out_leaf(toks[1]);
        } else if (toks[0] == "node") {
            if (toks.size() < 3 || toks.size() > 4) throw err("expected: node <id> <gate> [<label>]");
            if (toks[1].empty() || toks[1][0] != 'n') throw err("node id must look like n<k>");
            NodeId nid = 0;
            try {
                nid = static_cast<NodeId>(std::stoul(toks[1].substr(1)));
            } catch (...) {
                throw err("bad node id '" + toks[1] + "'");
            }
            auto kind = gate_from_name(toks[2]);
            if (!kind) throw err("unknown gate '" + toks[2] + "'");
            Gate gate{*kind, {}};
            if (*kind == GateKind::Dil) {
                if (toks.size() != 4) throw err("dil node needs a group element");
                try {
                    gate.dil_label = GroupElem::parse(toks[3]);
                } catch (const std::exception& ex) {
                    throw err(ex.what());
                }
            } else if (toks.size() == 4) {
                throw err("only dil nodes carry a label");
            }
            try {
                g.add_node_with_id(nid, gate);
            } catch (const std::exception& ex) {
                throw err(ex.what());
            }
        } else if (toks[0] == "edge") {
            if (toks.size() != 5 || toks[3] != "->") throw err("expected: edge <id> <src> -> <dst>");
            if (toks[1].empty() || toks[1][0] != 'e') throw err("edge id must look like e<k>");
            EdgeId eid = 0;
            try {
                eid = static_cast<EdgeId>(std::stoul(toks[1].substr(1)));
            } catch (...) {
                throw err("bad edge id '" + toks[1] + "'");
            }
            Endpoint src = parse_endpoint(toks[2], true);
            Endpoint dst = parse_endpoint(toks[4], false);
            try {
                g.add_edge_with_id(eid, src, dst);
            } catch (const std::exception& ex) {
                throw err(ex.what());
            }
        } else {
            throw err("unknown declaration '" + toks[0] + "'");
        }
    }
    auto violations = g.validate();
    if (!violations.empty()) {
        std::ostringstream os;
        os << "loaded graph is invalid:";
        for (const auto& v : violations) os << "\n  " << v.message;
        throw GlcError(os.str());
    }
    return g;
}

std::string to_dot(const Graph& g) {
    std::ostringstream os;
    os << "digraph glc {\n";
    os << "  rankdir=BT;\n";
    for (const auto& [id, n] : g.nodes()) {
        const char* shape = "circle";
        std::string label;
        switch (n.gate.kind) {
            case GateKind::Lambda: shape = "circle"; label = "λ"; break;
            case GateKind::FanOut: shape = "triangle"; label = "Y"; break;
            case GateKind::App: shape = "invtriangle"; label = "@"; break;
            case GateKind::Top: shape = "square"; label = "T"; break;
            case GateKind::Dil: shape = "diamond"; label = "~" + n.gate.dil_label.str(); break;
        }
        os << "  n" << id << " [shape=" << shape << ", label=\"" << label << "\"];\n";
    }
    for (std::uint32_t i = 0; i < g.in_leaves().size(); ++i)
        os << "  in_" << i << " [shape=box, label=\"in " << g.in_leaves()[i].name << "\"];\n";
    for (std::uint32_t i = 0; i < g.out_leaves().size(); ++i)
        os << "  out_" << i << " [shape=box, label=\"out " << g.out_leaves()[i].name << "\"];\n";
    auto dot_end = [&](const Endpoint& e) -> std::string {
        switch (e.kind) {
            case EndKind::Port: return "n" + std::to_string(e.id);
            case EndKind::InLeaf: return "in_" + std::to_string(e.id);
            case EndKind::OutLeaf: return "out_" + std::to_string(e.id);
            default: return "loop";
        }
    };
    for (const auto& [id, e] : g.edges()) {
        os << "  " << dot_end(e.src) << " -> " << dot_end(e.dst);
        os << " [";
        if (e.src.is_port()) os << "taillabel=\"" << e.src.port << "\"";
        if (e.dst.is_port()) {
            if (e.src.is_port()) os << ", ";
            os << "headlabel=\"" << e.dst.port << "\"";
        }
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace glc
