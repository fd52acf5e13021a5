#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tritree/pipeline.hpp"

namespace py = pybind11;
using namespace tritree;

namespace {

Colour colour_arg(const std::string& s) {
    if (s == "G" || s == "green") return Colour::Green;
    if (s == "R" || s == "red") return Colour::Red;
    throw Error("BadArguments", "colour must be G or R");
}

Rational rat(const std::string& s) { return Rational::from_decimal(s); }

}  // namespace

PYBIND11_MODULE(_tritree, m) {
    m.doc() = "coloured tripartite hosts, structural certificates, and greedy tree embedding";

    py::register_exception<Error>(m, "TritreeError");

    py::class_<TripartiteGraph>(m, "Graph")
        .def_static("build",
                    [](std::array<int, 3> sizes, const std::vector<std::tuple<int, int, std::string>>& edges) {
                        std::vector<ColouredEdge> es;
                        es.reserve(edges.size());
                        for (const auto& [u, v, c] : edges) es.push_back({u, v, colour_arg(c)});
                        return TripartiteGraph::build(sizes, es);
                    })
        .def_property_readonly("classes", &TripartiteGraph::class_sizes)
        .def_property_readonly("n_scale", &TripartiteGraph::n_scale)
        .def("num_vertices", &TripartiteGraph::num_vertices)
        .def("num_edges", [](const TripartiteGraph& g) { return g.num_edges(); })
        .def("edge_colour",
             [](const TripartiteGraph& g, int u, int v) -> py::object {
                 auto c = g.edge_colour(u, v);
                 if (!c) return py::none();
                 return py::str(std::string(1, letter(*c)));
             })
        .def("degree", [](const TripartiteGraph& g, int v) { return g.degree(v); })
        .def("to_json", [](const TripartiteGraph& g) { return graph_to_json(g).dump(); })
        .def_static("from_json",
                    [](const std::string& s) { return graph_from_json(json::parse(s)); });

    py::class_<Tree>(m, "Tree")
        .def_static("from_edges", &Tree::from_edges)
        .def("order", &Tree::order)
        .def_property_readonly("max_degree", &Tree::max_degree)
        .def_property_readonly("t1", &Tree::t1)
        .def_property_readonly("t2", &Tree::t2)
        .def("edges", &Tree::edge_list)
        .def("to_json", [](const Tree& t) { return tree_to_json(t).dump(); });

    py::class_<Matching>(m, "Matching")
        .def_property_readonly("colour", [](const Matching& m_) { return std::string(1, letter(m_.colour)); })
        .def_property_readonly("edges", [](const Matching& m_) { return m_.edges; })
        .def("size", &Matching::size);

    py::class_<ForkSystem>(m, "ForkSystem")
        .def_property_readonly("ratio", [](const ForkSystem& f) { return f.ratio; })
        .def("size", &ForkSystem::size);

    py::class_<Certificate>(m, "Certificate")
        .def_property_readonly("kind",
                               [](const Certificate& c) {
                                   return c.kind == Certificate::Kind::OddMatching ? "odd_matching"
                                                                                   : "good_pair";
                               })
        .def_property_readonly("colour", [](const Certificate& c) { return std::string(1, letter(c.colour())); })
        .def_property_readonly("matching", [](const Certificate& c) { return c.matching; })
        .def_property_readonly("forks", [](const Certificate& c) { return c.forks; })
        .def("to_json", [](const Certificate& c) { return certificate_to_json(c).dump(); });

    m.def("random_colouring", &gen_random_colouring, py::arg("n"), py::arg("p_green"),
          py::arg("seed"));
    m.def("sparse_host", &gen_sparse_host, py::arg("n"), py::arg("p"), py::arg("seed"),
          py::arg("p_green") = 0.5);
    m.def("random_tree", &random_tree, py::arg("t"), py::arg("max_degree"), py::arg("seed"));
    m.def(
        "s_cut",
        [](const Tree& t, int S) {
            TreeDecomposition d = s_cut(t, S);
            py::dict out;
            out["cut"] = d.cut;
            py::list shrubs;
            for (const auto& s : d.shrubs) shrubs.append(s.vertices);
            out["shrubs"] = shrubs;
            out["order"] = d.order;
            return out;
        },
        py::arg("tree"), py::arg("S"));
    m.def(
        "certify",
        [](const TripartiteGraph& g, const std::string& eta_prime) {
            CertifyResult r = certify_good_or_odd(g, rat(eta_prime));
            py::dict out;
            out["status"] = r.status == CertifyResult::Status::OddMatching      ? "odd_matching"
                            : r.status == CertifyResult::Status::GoodPair       ? "good_pair"
                            : r.status == CertifyResult::Status::ExtremalGoodPair ? "extremal_good_pair"
                                                                                  : "inconclusive";
            out["best_odd_matching"] = r.best_odd_matching;
            out["best_matching"] = r.best_matching;
            out["best_fork_system"] = r.best_fork_system;
            if (r.certificate) out["certificate"] = *r.certificate;
            return out;
        },
        py::arg("graph"), py::arg("eta_prime") = "0.05");
    m.def(
        "max_connected_matching",
        [](const TripartiteGraph& g, const std::string& colour, bool require_odd) {
            return *max_connected_matching(g, colour_arg(colour), require_odd);
        },
        py::arg("graph"), py::arg("colour"), py::arg("require_odd") = false);
    m.def(
        "pyramid_instance",
        [](int n, const std::string& eta, const std::string& mode, std::uint64_t seed) {
            PlantedInstance inst =
                gen_pyramid(n, rat(eta), mode == "tunnel" ? PyramidMode::Tunnel : PyramidMode::Crossing,
                            Colour::Green, Colour::Red, seed);
            return py::make_tuple(inst.graph, witness_to_json(inst.witness).dump());
        },
        py::arg("n"), py::arg("eta"), py::arg("mode"), py::arg("seed"));
    m.def(
        "planted_host",
        [](int L, double p, std::uint64_t seed) {
            return gen_planted_host(default_pipeline_template(), L, p, seed);
        },
        py::arg("L"), py::arg("p") = 1.0, py::arg("seed") = 0);
    m.def(
        "run_pipeline",
        [](const TripartiteGraph& host, const Tree& tree, const std::string& eta_prime,
           const std::string& mu, const std::string& eps, const std::string& d, int k, int S,
           std::uint64_t seed) {
            PipelineParams p;
            p.eta_prime = rat(eta_prime);
            p.mu = rat(mu);
            p.eps_audit = rat(eps);
            p.d = rat(d);
            p.k = k;
            if (S > 0) p.S_override = S;
            p.seed = seed;
            PipelineReport rep = run_pipeline(host, tree, p);
            return rep.to_json().dump();
        },
        py::arg("host"), py::arg("tree"), py::arg("eta_prime") = "0.05", py::arg("mu") = "0.5",
        py::arg("eps") = "0.05", py::arg("d") = "0.8", py::arg("k") = 6, py::arg("S") = 0,
        py::arg("seed") = 0);
    m.def("oracle_max_connected_matching",
          [](const TripartiteGraph& g, const std::string& colour, bool odd) {
              return oracle_max_connected_matching(g, colour_arg(colour), odd);
          });
    m.def("oracle_tree_embedding", [](const Tree& t, const TripartiteGraph& g, const std::string& c) {
        return oracle_tree_embedding(t, g, colour_arg(c));
    });
}
