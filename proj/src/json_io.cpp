#include "tritree/json_io.hpp"

#include <fstream>

namespace tritree {

namespace {

Colour colour_from(const std::string& s) {
    if (s == "G" || s == "green") return Colour::Green;
    if (s == "R" || s == "red") return Colour::Red;
    throw Error("BadJson", "unknown colour '" + s + "'");
}

std::string colour_str(Colour c) { return c == Colour::Green ? "G" : "R"; }

Rational rational_from(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        auto slash = s.find('/');
        if (slash != std::string::npos)
            return {std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
        return Rational::from_decimal(s);
    }
    throw Error("BadJson", "expected a rational (integer or string)");
}

json rational_to(const Rational& r) { return r.str(); }

}  // namespace

json graph_to_json(const TripartiteGraph& g) {
    json j;
    j["classes"] = g.class_sizes();
    json edges = json::array();
    for (const auto& e : g.edge_list()) edges.push_back({e.u, e.v, colour_str(e.colour)});
    j["edges"] = std::move(edges);
    if (g.n_scale() != std::max({g.class_sizes()[0], g.class_sizes()[1], g.class_sizes()[2]}))
        j["n_scale"] = g.n_scale();
    return j;
}

TripartiteGraph graph_from_json(const json& j) {
    std::array<int, 3> sizes = j.at("classes").get<std::array<int, 3>>();
    std::vector<ColouredEdge> edges;
    for (const auto& e : j.at("edges"))
        edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), colour_from(e.at(2).get<std::string>())});
    std::optional<int> scale;
    if (j.contains("n_scale")) scale = j.at("n_scale").get<int>();
    return TripartiteGraph::build(sizes, edges, scale);
}

json tree_to_json(const Tree& t) {
    json j;
    j["t"] = t.order();
    json edges = json::array();
    for (auto [u, v] : t.edge_list()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j;
}

Tree tree_from_json(const json& j) {
    int t = j.at("t").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return Tree::from_edges(t, edges);
}

json matching_to_json(const Matching& m) {
    json j;
    j["kind"] = "matching";
    j["colour"] = colour_str(m.colour);
    json edges = json::array();
    for (auto [u, v] : m.edges) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    if (m.component_id >= 0) j["component"] = m.component_id;
    return j;
}

Matching matching_from_json(const json& j) {
    Matching m;
    m.colour = colour_from(j.at("colour").get<std::string>());
    for (const auto& e : j.at("edges")) m.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    if (j.contains("component")) m.component_id = j.at("component").get<int>();
    return m;
}

json fork_system_to_json(const ForkSystem& f) {
    json j;
    j["kind"] = "forks";
    j["colour"] = colour_str(f.colour);
    json forks = json::array();
    for (const auto& fk : f.forks) forks.push_back({{"center", fk.center}, {"prongs", fk.prongs}});
    j["forks"] = std::move(forks);
    j["ratio"] = f.ratio;
    j["size"] = f.size();
    j["center_side"] = f.center_side;
    j["prong_side"] = f.prong_side;
    return j;
}

ForkSystem fork_system_from_json(const json& j) {
    ForkSystem f;
    f.colour = colour_from(j.at("colour").get<std::string>());
    f.ratio = j.at("ratio").get<int>();
    for (const auto& fk : j.at("forks")) {
        Fork fork;
        fork.center = fk.at("center").get<int>();
        fork.prongs = fk.at("prongs").get<std::vector<int>>();
        f.forks.push_back(std::move(fork));
    }
    if (j.contains("center_side")) f.center_side = j.at("center_side").get<std::vector<int>>();
    if (j.contains("prong_side")) f.prong_side = j.at("prong_side").get<std::vector<int>>();
    return f;
}

json certificate_to_json(const Certificate& c) {
    json j;
    j["kind"] = c.kind == Certificate::Kind::OddMatching ? "odd_matching" : "good_pair";
    j["colour"] = colour_str(c.colour());
    j["matching"] = matching_to_json(c.matching);
    if (c.forks) j["forks"] = fork_system_to_json(*c.forks);
    j["thresholds"] = {{"m", rational_to(c.thresholds.m)},
                       {"f", rational_to(c.thresholds.f)},
                       {"r", c.thresholds.r}};
    j["achieved"] = {{"m", c.matching.size()}, {"f", c.forks ? c.forks->size() : 0}};
    return j;
}

Certificate certificate_from_json(const json& j) {
    Certificate c;
    c.kind = j.at("kind").get<std::string>() == "odd_matching" ? Certificate::Kind::OddMatching
                                                               : Certificate::Kind::GoodPair;
    c.matching = matching_from_json(j.at("matching"));
    if (j.contains("forks")) c.forks = fork_system_from_json(j.at("forks"));
    const auto& t = j.at("thresholds");
    c.thresholds.m = rational_from(t.at("m"));
    c.thresholds.f = rational_from(t.at("f"));
    c.thresholds.r = t.at("r").get<int>();
    return c;
}

json witness_to_json(const ExtremalWitness& w) {
    json j;
    if (const auto* p = std::get_if<PyramidWitness>(&w)) {
        j["kind"] = "pyramid";
        j["mode"] = p->mode == PyramidMode::Tunnel ? "tunnel" : "crossing";
        j["c"] = colour_str(p->c);
        j["cp"] = colour_str(p->cp);
        j["eta"] = rational_to(p->eta);
        j["D1"] = p->d1;
        j["D2"] = p->d2;
        j["D1p"] = p->d1p;
        j["D2p"] = p->d2p;
        return j;
    }
    const auto& s = std::get<SpiderWitness>(w);
    j["kind"] = "spider";
    j["c"] = colour_str(s.c);
    j["eta"] = rational_to(s.eta);
    j["A1"] = s.a1;
    j["A2"] = s.a2;
    j["B1"] = s.b1;
    j["B2"] = s.b2;
    j["C1"] = s.c1;
    j["C2"] = s.c2;
    j["A_B"] = s.a_b;
    j["A_C"] = s.a_c;
    j["B_A"] = s.b_a;
    j["B_C"] = s.b_c;
    j["C_A"] = s.c_a;
    j["C_B"] = s.c_b;
    j["C_C"] = s.c_c;
    return j;
}

ExtremalWitness witness_from_json(const json& j) {
    auto vec = [&](const char* key) { return j.at(key).get<std::vector<int>>(); };
    if (j.at("kind").get<std::string>() == "pyramid") {
        PyramidWitness p;
        p.mode = j.at("mode").get<std::string>() == "tunnel" ? PyramidMode::Tunnel
                                                             : PyramidMode::Crossing;
        p.c = colour_from(j.at("c").get<std::string>());
        p.cp = colour_from(j.at("cp").get<std::string>());
        p.eta = rational_from(j.at("eta"));
        p.d1 = vec("D1");
        p.d2 = vec("D2");
        p.d1p = vec("D1p");
        p.d2p = vec("D2p");
        return p;
    }
    SpiderWitness s;
    s.c = colour_from(j.at("c").get<std::string>());
    s.eta = rational_from(j.at("eta"));
    s.a1 = vec("A1");
    s.a2 = vec("A2");
    s.b1 = vec("B1");
    s.b2 = vec("B2");
    s.c1 = vec("C1");
    s.c2 = vec("C2");
    s.a_b = vec("A_B");
    s.a_c = vec("A_C");
    s.b_a = vec("B_A");
    s.b_c = vec("B_C");
    s.c_a = vec("C_A");
    s.c_b = vec("C_B");
    s.c_c = vec("C_C");
    return s;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("IoError", "cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("IoError", "cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace tritree
