#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "glc/canonical.hpp"
#include "glc/encode.hpp"
#include "glc/moves.hpp"
#include "glc/predicates.hpp"
#include "glc/reduce.hpp"
#include "glc/serialize.hpp"

namespace {

using namespace glc;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GlcError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw GlcError("cannot write '" + path + "'");
    out << text;
}

bool looks_like_file(const std::string& s) {
    std::ifstream in(s);
    return in.good();
}

// .lam corpus files hold one term per line with # comments; an invocation
// works on a single term
std::string term_from_lam(const std::string& path) {
    std::istringstream is(slurp(path));
    std::string line, found;
    int terms = 0;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (blank) continue;
        found = line;
        ++terms;
    }
    if (terms != 1)
        throw GlcError(path + ": expected exactly one term, found " + std::to_string(terms));
    return found;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Graph load_graph_or_term(const std::string& arg, bool lambda_scale, FanOutPolicy policy) {
    std::string text = arg;
    if (looks_like_file(arg)) {
        if (!ends_with(arg, ".lam")) return deserialize(slurp(arg));
        text = term_from_lam(arg);
    }
    TermPtr t = parse_term(text);
    return lambda_scale ? encode_lambda_scale(t, policy) : encode(t, policy);
}

std::vector<MoveKind> parse_move_list(const std::string& spec_str) {
    std::vector<MoveKind> kinds;
    std::istringstream is(spec_str);
    std::string tok;
    auto push_prunes_local = [&] {
        kinds.insert(kinds.end(), {MoveKind::PruneLocalFanOut, MoveKind::PruneLocalApp,
                                   MoveKind::PruneLocalDil, MoveKind::PruneLocalLambda});
    };
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        if (tok == "prune_local" || tok == "prune_local*") {
            push_prunes_local();
        } else if (tok == "prune") {
            push_prunes_local();
            kinds.push_back(MoveKind::PruneGlobal);
        } else if (auto k = move_from_name(tok)) {
            kinds.push_back(*k);
        } else {
            throw GlcError("unknown move kind '" + tok + "'");
        }
    }
    return kinds;
}

// --------------------------------------------------------------- manifest

struct DemoEntry {
    std::string name;
    std::string group;
    std::string kind = "reduce"; // reduce | omega | reidemeister2 | planar_beta
    std::string input, result;
    std::string expect; // "beta=5 prune_local=1"
    bool equivalent = false; // compare with equivalent_mod_structure
    bool derived = false;
    int budget = 200;
    int variant = 1;       // planar beta
    std::string eps = "1"; // reidemeister2
};

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// minimal TOML subset: [[demo]] tables with string/int/bool values
std::vector<DemoEntry> load_manifest(const std::string& path) {
    std::vector<DemoEntry> out;
    std::istringstream is(slurp(path));
    std::string line;
    DemoEntry* cur = nullptr;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        if (line == "[[demo]]") {
            out.emplace_back();
            cur = &out.back();
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos || !cur)
            throw GlcError(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = strip(line.substr(0, eq));
        std::string val = strip(line.substr(eq + 1));
        auto unquote = [&](const std::string& v) {
            if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
            return v;
        };
        if (key == "name") cur->name = unquote(val);
        else if (key == "group") cur->group = unquote(val);
        else if (key == "kind") cur->kind = unquote(val);
        else if (key == "input") cur->input = unquote(val);
        else if (key == "result") cur->result = unquote(val);
        else if (key == "expect") cur->expect = unquote(val);
        else if (key == "equivalent") cur->equivalent = val == "true";
        else if (key == "derived") cur->derived = val == "true";
        else if (key == "budget") cur->budget = std::stoi(val);
        else if (key == "variant") cur->variant = std::stoi(val);
        else if (key == "eps") cur->eps = unquote(val);
        else throw GlcError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    return out;
}

std::map<std::string, int> parse_counts(const std::string& expect) {
    std::map<std::string, int> m;
    std::istringstream is(expect);
    std::string tok;
    while (is >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw GlcError("bad expect clause '" + tok + "'");
        m[tok.substr(0, eq)] = std::stoi(tok.substr(eq + 1));
    }
    return m;
}

std::map<std::string, int> trace_counts(const Trace& trace) {
    std::map<std::string, int> m;
    for (const auto& s : trace.steps) {
        if (is_local_prune(s.kind)) {
            m["prune_local"]++;
        } else {
            m[move_name(s.kind)]++;
        }
    }
    return m;
}

std::string format_counts(const std::map<std::string, int>& m) {
    static const std::vector<std::string> order = {"beta",       "coassoc",      "cocomm", "r1", "r2",
                                                   "ext1",       "ext2",         "prune_local",
                                                   "prune_global", "fanout_global", "loop_elim"};
    std::ostringstream os;
    bool first = true;
    for (const auto& key : order) {
        auto it = m.find(key);
        if (it == m.end() || it->second == 0) continue;
        if (!first) os << " ";
        first = false;
        os << key << "=" << it->second;
    }
    if (first) os << "(no moves)";
    return os.str();
}

struct DemoOutcome {
    bool ok = true;
    std::string line;
};

DemoOutcome run_demo(const DemoEntry& d) {
    DemoOutcome o;
    std::ostringstream line;
    if (d.kind == "reduce") {
        Graph g = build_named(d.input);
        Graph expected = build_named(d.result);
        ReduceResult rr = reduce(g, Strategy::lambda_default(d.budget));
        auto counts = trace_counts(rr.trace);
        bool count_ok = true;
        for (const auto& [k, v] : parse_counts(d.expect)) {
            auto it = counts.find(k);
            if ((it == counts.end() ? 0 : it->second) != v) count_ok = false;
        }
        bool shape_ok = d.equivalent ? equivalent_mod_structure(rr.graph, expected)
                                     : is_isomorphic(rr.graph, expected);
        o.ok = count_ok && shape_ok && !rr.trace.budget_exhausted;
        line << format_counts(counts) << " result=" << d.result << (o.ok ? " OK" : " FAIL");
    } else if (d.kind == "omega") {
        Graph omega = omega_graph();
        auto betas = find_matches(omega, MoveKind::Beta);
        bool one_redex = betas.size() == 1;
        Graph after = one_redex ? apply(omega, betas.front()).graph : omega;
        bool fixed_point = one_redex && equivalent_mod_structure(after, omega);
        ReduceResult rr = reduce(omega, Strategy::lambda_default(d.budget));
        bool bounded = rr.graph.node_count() <= omega.node_count();
        o.ok = fixed_point && bounded && rr.trace.budget_exhausted; // omega never terminates
        auto counts = trace_counts(rr.trace);
        line << format_counts(counts) << " result=omega" << (o.ok ? " OK" : " FAIL");
    } else if (d.kind == "reidemeister2") {
        ProofResult pr = verify_reidemeister_ii(GroupElem::parse(d.eps));
        o.ok = pr.ok;
        auto counts = trace_counts(pr.trace);
        line << format_counts(counts) << " eps=" << d.eps << " result=wires"
             << (o.ok ? " OK" : " FAIL");
    } else if (d.kind == "planar_beta") {
        ProofResult pr = verify_planar_beta(d.variant);
        o.ok = pr.ok;
        line << "beta=" << pr.trace.count(MoveKind::Beta) << " result=wires"
             << (o.ok ? " OK" : " FAIL");
    } else {
        throw GlcError("unknown demo kind '" + d.kind + "'");
    }
    o.line = line.str();
    return o;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"glc: rewriting engine for decorated locally planar trivalent graphs"};
    app.require_subcommand(1);

    std::string term_arg, out_path, input_arg, trace_path, dot_path, moves_arg, manifest_path =
                                                                                    "demos/paper.toml";
    std::string demo_name, apply_arg, list_arg, fanout = "right";
    bool lambda_scale = false, flag_lambda_graph = false, flag_planar = false, demo_all = false;
    int budget = 200;

    auto* cmd_encode = app.add_subcommand("encode", "encode a term into a graph");
    cmd_encode->add_option("term", term_arg, "term text")->required();
    cmd_encode->add_flag("--lambda-scale", lambda_scale, "allow lambda-Scale operations");
    cmd_encode->add_option("--fanout", fanout, "fanout tree policy: right|left");
    cmd_encode->add_option("-o,--output", out_path, "output file");

    auto* cmd_reduce = app.add_subcommand("reduce", "reduce a graph or term");
    cmd_reduce->add_option("input", input_arg, "graph file or term text")->required();
    cmd_reduce->add_option("--moves", moves_arg, "comma separated move kinds");
    cmd_reduce->add_option("--budget", budget, "maximum number of moves");
    cmd_reduce->add_option("--trace", trace_path, "write the trace here");
    cmd_reduce->add_option("-o,--output", out_path, "output file");
    cmd_reduce->add_flag("--lambda-scale", lambda_scale, "allow lambda-Scale operations");

    auto* cmd_check = app.add_subcommand("check", "run the global predicates");
    cmd_check->add_option("input", input_arg, "graph file")->required();
    cmd_check->add_flag("--lambda-graph", flag_lambda_graph, "check lambda-graph membership");
    cmd_check->add_flag("--planar", flag_planar, "check disk planarity");

    auto* cmd_show = app.add_subcommand("show", "export a graph to DOT");
    cmd_show->add_option("input", input_arg, "graph file")->required();
    cmd_show->add_option("--dot", dot_path, "write DOT here");

    auto* cmd_demo = app.add_subcommand("demo", "replay the paper's propositions");
    cmd_demo->add_flag("--all", demo_all, "run every demo");
    cmd_demo->add_option("--name", demo_name, "run demos with this name or group");
    cmd_demo->add_option("--manifest", manifest_path, "demo manifest");

    auto* cmd_step = app.add_subcommand("step", "list or apply single moves");
    cmd_step->add_option("input", input_arg, "graph file")->required();
    cmd_step->add_option("--apply", apply_arg, "<kind>:<match index> to apply");
    cmd_step->add_option("--list", list_arg, "list matches of this kind");
    cmd_step->add_option("-o,--output", out_path, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*cmd_encode) {
            FanOutPolicy policy = fanout == "left" ? FanOutPolicy::LeftComb : FanOutPolicy::RightComb;
            std::string term_text = term_arg;
            if (ends_with(term_arg, ".lam") && looks_like_file(term_arg))
                term_text = term_from_lam(term_arg);
            TermPtr t = parse_term(term_text);
            Graph g = lambda_scale ? encode_lambda_scale(t, policy) : encode(t, policy);
            std::string text = serialize(g);
            if (out_path.empty()) std::cout << text;
            else spit(out_path, text);
            return 0;
        }
        if (*cmd_reduce) {
            Graph g = load_graph_or_term(input_arg, lambda_scale, FanOutPolicy::RightComb);
            Strategy s = Strategy::lambda_default(budget);
            if (!moves_arg.empty()) s.kinds = parse_move_list(moves_arg);
            s.record_hashes = true;
            ReduceResult rr = reduce(g, s);
            std::string text = serialize(rr.graph);
            if (out_path.empty()) std::cout << text;
            else spit(out_path, text);
            if (!trace_path.empty()) spit(trace_path, rr.trace.format());
            return 0;
        }
        if (*cmd_check) {
            Graph g = deserialize(slurp(input_arg));
            bool check_all = !flag_lambda_graph && !flag_planar;
            bool ok = true;
            if (flag_lambda_graph || check_all) {
                auto r = is_lambda_graph(g);
                std::cout << "lambda-graph: " << (r.ok ? "yes" : "no") << " ("
                          << (r.ok ? "-" : r.witness) << ")\n";
                ok = ok && r.ok;
            }
            if (flag_planar || check_all) {
                FaceTrace ft = face_trace(g);
                bool planar = is_planar_in_disk(g);
                std::cout << "planar-disk: " << (planar ? "yes" : "no") << " (genus=" << ft.genus
                          << ")\n";
                ok = ok && planar;
            }
            return ok ? 0 : 1;
        }
        if (*cmd_show) {
            Graph g = deserialize(slurp(input_arg));
            std::string text = to_dot(g);
            if (dot_path.empty()) std::cout << text;
            else spit(dot_path, text);
            return 0;
        }
        if (*cmd_step) {
            Graph g = deserialize(slurp(input_arg));
            if (!list_arg.empty()) {
                auto kind = move_from_name(list_arg);
                if (!kind) throw GlcError("unknown move kind '" + list_arg + "'");
                FindOptions opts;
                opts.include_expansive = true;
                auto ms = find_matches(g, *kind, false, opts);
                for (std::size_t i = 0; i < ms.size(); ++i) {
                    std::cout << i << ": " << move_name(ms[i].kind) << " nodes=";
                    for (std::size_t k = 0; k < ms[i].nodes.size(); ++k)
                        std::cout << (k ? "," : "") << ms[i].nodes[k];
                    std::cout << "\n";
                }
                return 0;
            }
            if (!apply_arg.empty()) {
                auto colon = apply_arg.find(':');
                if (colon == std::string::npos) throw GlcError("--apply needs <kind>:<index>");
                auto kind = move_from_name(apply_arg.substr(0, colon));
                if (!kind) throw GlcError("unknown move kind");
                int index = std::stoi(apply_arg.substr(colon + 1));
                auto ms = find_matches(g, *kind);
                if (index < 0 || index >= static_cast<int>(ms.size()))
                    throw GlcError("match index out of range");
                ApplyResult r = apply(g, ms[index]);
                std::string text = serialize(r.graph);
                if (out_path.empty()) std::cout << text;
                else spit(out_path, text);
                return 0;
            }
            throw GlcError("step needs --list or --apply");
        }
        if (*cmd_demo) {
            auto demos = load_manifest(manifest_path);
            std::vector<DemoEntry> selected;
            for (const auto& d : demos)
                if (demo_all || d.name == demo_name || d.group == demo_name) selected.push_back(d);
            if (selected.empty()) throw GlcError("no demo selected (use --all or --name)");
            bool all_ok = true;
            bool prefix = selected.size() > 1 || demo_all;
            for (const auto& d : selected) {
                DemoOutcome o = run_demo(d);
                all_ok = all_ok && o.ok;
                if (prefix) std::cout << d.name << ": ";
                std::cout << o.line << "\n";
            }
            return all_ok ? 0 : 1;
        }
    } catch (const GlcError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
