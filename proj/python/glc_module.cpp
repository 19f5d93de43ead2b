#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "glc/canonical.hpp"
#include "glc/encode.hpp"
#include "glc/moves.hpp"
#include "glc/predicates.hpp"
#include "glc/reduce.hpp"
#include "glc/serialize.hpp"

namespace py = pybind11;
using namespace glc;

namespace {

Graph encode_str(const std::string& text, bool lambda_scale, const std::string& fanout) {
    FanOutPolicy p = fanout == "left" ? FanOutPolicy::LeftComb : FanOutPolicy::RightComb;
    TermPtr t = parse_term(text);
    return lambda_scale ? encode_lambda_scale(t, p) : encode(t, p);
}

std::vector<MoveKind> kinds_from_names(const std::vector<std::string>& names) {
    std::vector<MoveKind> out;
    for (const auto& n : names) {
        auto k = move_from_name(n);
        if (!k) throw GlcError("unknown move kind '" + n + "'");
        out.push_back(*k);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_glc, m) {
    m.doc() = "rewriting engine for decorated locally planar trivalent graphs";

    py::register_exception<GlcError>(m, "GlcError");

    py::class_<Graph>(m, "Graph")
        .def("node_count", &Graph::node_count)
        .def("edge_count", [](const Graph& g) { return g.edges().size(); })
        .def("validate",
             [](const Graph& g) {
                 std::vector<std::string> out;
                 for (const auto& v : g.validate()) out.push_back(v.message);
                 return out;
             })
        .def("serialize", [](const Graph& g) { return serialize(g); })
        .def("to_dot", [](const Graph& g) { return to_dot(g); })
        .def("canonical_form", [](const Graph& g) { return canonical_form(g); })
        .def("canonical_hash", [](const Graph& g) { return canonical_hash(g, 12); })
        .def("__repr__", [](const Graph& g) {
            return "<glc.Graph nodes=" + std::to_string(g.node_count()) +
                   " edges=" + std::to_string(g.edges().size()) + ">";
        });

    py::class_<Trace>(m, "Trace")
        .def("__len__", [](const Trace& t) { return t.steps.size(); })
        .def_readonly("budget_exhausted", &Trace::budget_exhausted)
        .def("count",
             [](const Trace& t, const std::string& kind) {
                 auto k = move_from_name(kind);
                 if (!k) throw GlcError("unknown move kind '" + kind + "'");
                 return t.count(*k);
             })
        .def("count_local_prunes", &Trace::count_local_prunes)
        .def("format", &Trace::format);

    m.def("encode", &encode_str, py::arg("term"), py::arg("lambda_scale") = false,
          py::arg("fanout") = "right");
    m.def("deserialize", &deserialize);
    m.def("is_isomorphic", &is_isomorphic);
    m.def("equivalent_mod_structure", &equivalent_mod_structure);
    m.def("normalize_coassoc", &normalize_coassoc);
    m.def(
        "reduce",
        [](const Graph& g, const std::vector<std::string>& moves, int budget) {
            Strategy s = Strategy::lambda_default(budget);
            if (!moves.empty()) s.kinds = kinds_from_names(moves);
            ReduceResult r = reduce(g, s);
            return py::make_tuple(r.graph, r.trace);
        },
        py::arg("graph"), py::arg("moves") = std::vector<std::string>{}, py::arg("budget") = 200);
    m.def("find_match_count", [](const Graph& g, const std::string& kind) {
        auto k = move_from_name(kind);
        if (!k) throw GlcError("unknown move kind '" + kind + "'");
        return find_matches(g, *k).size();
    });
    m.def("is_lambda_graph", [](const Graph& g) { return is_lambda_graph(g).ok; });
    m.def("is_planar_in_disk", &is_planar_in_disk);
    m.def("genus", [](const Graph& g) { return face_trace(g).genus; });
    m.def("church", &church);
    m.def("combinator", [](const std::string& w) {
        if (w.size() != 1) throw GlcError("combinator needs I, K or S");
        return combinator(w[0]);
    });
    m.def("succ_graph", &succ_graph);
    m.def("plus_graph", &plus_graph);
    m.def("omega_graph", &omega_graph);
    m.def("build_named", &build_named);
    m.def("compose_app", &compose_app);
    m.def("crossing", [](const std::string& eps) { return crossing(GroupElem::parse(eps)); });
    m.def("crossing_inv", [](const std::string& eps) { return crossing_inv(GroupElem::parse(eps)); });
    m.def("verify_planar_beta", [](int v) {
        ProofResult r = verify_planar_beta(v);
        return py::make_tuple(r.ok, r.trace);
    });
    m.def("verify_reidemeister_ii", [](const std::string& eps) {
        ProofResult r = verify_reidemeister_ii(GroupElem::parse(eps));
        return py::make_tuple(r.ok, r.trace);
    });
    m.def("planarize", [](const Graph& g) {
        PlanarizeResult r = planarize(g);
        return py::make_tuple(r.graph, r.crossings);
    });
    m.def("substitute_str",
          [](const std::string& t, const std::string& x, const std::string& s) {
              return pretty(substitute(parse_term(t), x, parse_term(s)));
          });
    m.def("alpha_eq_str", [](const std::string& a, const std::string& b) {
        return alpha_eq(parse_term(a), parse_term(b));
    });
}
