#include <doctest.h>

#include <set>

#include "tritree/graph.hpp"
#include "tritree/rng.hpp"

using namespace tritree;

namespace {

TripartiteGraph complete(int n, Colour c) {
    std::vector<ColouredEdge> edges;
    for (int u = 0; u < 3 * n; ++u)
        for (int v = u + 1; v < 3 * n; ++v)
            if (u / n != v / n) edges.push_back({u, v, c});
    return TripartiteGraph::build({n, n, n}, edges);
}

TripartiteGraph random_graph(Rng& rng, int max_per_class) {
    int na = 1 + static_cast<int>(rng.bounded(max_per_class));
    int nb = 1 + static_cast<int>(rng.bounded(max_per_class));
    int nc = 1 + static_cast<int>(rng.bounded(max_per_class));
    std::vector<ColouredEdge> edges;
    TripartiteGraph empty = TripartiteGraph::build({na, nb, nc}, {});
    for (int u = 0; u < na + nb + nc; ++u)
        for (int v = u + 1; v < na + nb + nc; ++v) {
            if (empty.class_of(u) == empty.class_of(v)) continue;
            int roll = static_cast<int>(rng.bounded(3));
            if (roll == 0) continue;
            edges.push_back({u, v, roll == 1 ? Colour::Green : Colour::Red});
        }
    return TripartiteGraph::build({na, nb, nc}, edges);
}

// Reference bipartiteness test, independent of the BFS in colour_components.
bool bipartite_by_dfs(const TripartiteGraph& g, Colour c, const std::vector<int>& vertices) {
    std::map<int, int> colouring;
    for (int start : vertices) {
        if (colouring.count(start)) continue;
        std::vector<int> stack{start};
        colouring[start] = 0;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : vertices) {
                if (v == u || !g.neighbours(u, c).test(v)) continue;
                if (!colouring.count(v)) {
                    colouring[v] = colouring[u] ^ 1;
                    stack.push_back(v);
                } else if (colouring[v] == colouring[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("build_graph accepts the smallest tripartite triangle") {
    auto g = TripartiteGraph::build({1, 1, 1}, {{0, 1, Colour::Green},
                                                {1, 2, Colour::Green},
                                                {2, 0, Colour::Green}});
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 3);
    CHECK(g.edge_colour(0, 1) == Colour::Green);
    CHECK(g.edge_colour(1, 0) == Colour::Green);  // symmetry
    CHECK(g.n_scale() == 1);
}

TEST_CASE("build_graph accepts the complete all-green K_{2,2,2}") {
    auto g = complete(2, Colour::Green);
    CHECK(g.num_edges() == 12);
    for (int v = 0; v < 6; ++v) CHECK(g.degree(v) == 4);
}

TEST_CASE("build_graph rejects bad input") {
    CHECK_THROWS_WITH_AS(TripartiteGraph::build({2, 1, 0}, {{0, 1, Colour::Red}}),
                         doctest::Contains("IntraClassEdge"), Error);
    CHECK_THROWS_WITH_AS(TripartiteGraph::build({1, 1, 0}, {{0, 5, Colour::Red}}),
                         doctest::Contains("IndexOutOfRange"), Error);
    CHECK_THROWS_WITH_AS(
        TripartiteGraph::build({1, 1, 0}, {{0, 1, Colour::Red}, {1, 0, Colour::Green}}),
        doctest::Contains("DuplicateEdge"), Error);
    // Same colour repeated is tolerated as a duplicate mention.
    CHECK_NOTHROW(TripartiteGraph::build({1, 1, 0}, {{0, 1, Colour::Red}, {1, 0, Colour::Red}}));
}

TEST_CASE("density on trivial pairs") {
    auto g = complete(2, Colour::Green);
    auto a = g.class_vertices(0), b = g.class_vertices(1);
    CHECK(density(g, a, b) == Rational(1));
    auto empty_g = TripartiteGraph::build({2, 2, 2}, {});
    CHECK(density(empty_g, empty_g.class_vertices(0), empty_g.class_vertices(1)) == Rational(0));

    // |U|=1, |W|=2, one green edge: green density 1/2.
    auto g2 = TripartiteGraph::build({1, 2, 0}, {{0, 1, Colour::Green}, {0, 2, Colour::Red}});
    CHECK(density(g2, Colour::Green, {0}, {1, 2}) == Rational(1, 2));
    CHECK_THROWS_AS(density(g2, {}, {1}), Error);
}

TEST_CASE("density of a disjoint union is the edge-weighted average of the parts") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = random_graph(rng, 5);
        auto b = g.class_vertices(1);
        auto c = g.class_vertices(2);
        if (b.size() < 2) continue;
        std::vector<int> b1(b.begin(), b.begin() + b.size() / 2), b2(b.begin() + b.size() / 2, b.end());
        Rational lhs = density(g, b, c) * Rational(static_cast<std::int64_t>(b.size()));
        Rational rhs = density(g, b1, c) * Rational(static_cast<std::int64_t>(b1.size())) +
                       density(g, b2, c) * Rational(static_cast<std::int64_t>(b2.size()));
        CHECK(lhs == rhs);
        CHECK(density(g, b, c) >= Rational(0));
        CHECK(density(g, b, c) <= Rational(1));
    }
}

TEST_CASE("eta-completeness") {
    auto g = complete(4, Colour::Green);
    auto a = g.class_vertices(0), b = g.class_vertices(1);
    CHECK(is_eta_complete(g, a, b, Rational(0)));
    CHECK(is_eta_complete(g, a, b, Rational(0), Colour::Green));
    CHECK_FALSE(is_eta_complete(g, a, b, Rational(1), Colour::Red));

    // Complete minus a perfect matching: each vertex misses exactly one.
    std::vector<ColouredEdge> edges;
    int m = 4;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j) edges.push_back({i, m + j, Colour::Green});
    auto g2 = TripartiteGraph::build({m, m, 0}, edges);
    auto a2 = g2.class_vertices(0), b2 = g2.class_vertices(1);
    CHECK(is_eta_complete(g2, a2, b2, Rational(1, 4)));       // eta*n = 1
    CHECK_FALSE(is_eta_complete(g2, a2, b2, Rational(1, 8)));  // eta*n < 1

    // One vertex isolated from the other side.
    std::vector<ColouredEdge> e3;
    for (int i = 1; i < m; ++i)
        for (int j = 0; j < m; ++j) e3.push_back({i, m + j, Colour::Green});
    auto g3 = TripartiteGraph::build({m, m, 0}, e3);
    CHECK_FALSE(is_eta_complete(g3, g3.class_vertices(0), g3.class_vertices(1), Rational(1, 4)));

    CHECK_THROWS_WITH_AS(is_eta_complete(g3, {0, 1}, {1, 4}, Rational(1)),
                         doctest::Contains("OverlappingSets"), Error);
}

TEST_CASE("class K_eta membership") {
    // Complete K_{n,n,n}: minimum degree 2n > (2-eta)n for every eta > 0.
    auto g = complete(3, Colour::Green);
    CHECK(in_class_K_eta(g, Rational(1, 100)));

    // One vertex missing 2 of its 6 cross-neighbours: degree 4 <= 4.5.
    std::vector<ColouredEdge> edges;
    for (int u = 0; u < 9; ++u)
        for (int v = u + 1; v < 9; ++v) {
            if (u / 3 == v / 3) continue;
            if (u == 0 && (v == 3 || v == 6)) continue;
            edges.push_back({u, v, Colour::Green});
        }
    auto g2 = TripartiteGraph::build({3, 3, 3}, edges);
    CHECK(g2.degree(0) == 4);
    CHECK_FALSE(in_class_K_eta(g2, Rational(1, 2)));

    // Minus a single edge: minimum degree 5 > 4.5.
    std::vector<ColouredEdge> e3;
    for (int u = 0; u < 9; ++u)
        for (int v = u + 1; v < 9; ++v) {
            if (u / 3 == v / 3) continue;
            if (u == 0 && v == 3) continue;
            e3.push_back({u, v, Colour::Green});
        }
    auto g3 = TripartiteGraph::build({3, 3, 3}, e3);
    CHECK(in_class_K_eta(g3, Rational(1, 2)));

    auto unbalanced = TripartiteGraph::build({2, 1, 1}, {});
    CHECK_THROWS_WITH_AS(in_class_K_eta(unbalanced, Rational(1, 2)),
                         doctest::Contains("UnbalancedClasses"), Error);
}

TEST_CASE("colour components: even cycle, odd triangle, split components") {
    // Green 6-cycle across classes A and B: one even component.
    auto c6 = TripartiteGraph::build({3, 3, 0}, {{0, 3, Colour::Green},
                                                 {3, 1, Colour::Green},
                                                 {1, 4, Colour::Green},
                                                 {4, 2, Colour::Green},
                                                 {2, 5, Colour::Green},
                                                 {5, 0, Colour::Green}});
    auto comps = colour_components(c6, Colour::Green);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].vertices.size() == 6);
    CHECK_FALSE(comps[0].is_odd);
    CHECK_FALSE(comps[0].odd_cycle.has_value());

    // Green triangle: odd, with a length-3 witness.
    auto tri = TripartiteGraph::build({1, 1, 1}, {{0, 1, Colour::Green},
                                                  {1, 2, Colour::Green},
                                                  {2, 0, Colour::Green}});
    auto tcomps = colour_components(tri, Colour::Green);
    REQUIRE(tcomps.size() == 1);
    CHECK(tcomps[0].is_odd);
    REQUIRE(tcomps[0].odd_cycle.has_value());
    CHECK(tcomps[0].odd_cycle->size() == 3);

    // Two disjoint green edges: two components; red side empty.
    auto two = TripartiteGraph::build({2, 2, 0}, {{0, 2, Colour::Green}, {1, 3, Colour::Green}});
    CHECK(colour_components(two, Colour::Green).size() == 2);
    CHECK(colour_components(two, Colour::Red).empty());
}

TEST_CASE("components: reachability, oddness vs independent test, witness validity") {
    Rng rng(2024);
    for (int trial = 0; trial < 120; ++trial) {
        auto g = random_graph(rng, 10);  // up to 30 vertices
        for (Colour c : {Colour::Green, Colour::Red}) {
            auto comps = colour_components(g, c);
            std::set<int> seen;
            for (const auto& comp : comps) {
                // Partition property: vertices appear once and carry an edge.
                for (int v : comp.vertices) {
                    CHECK(seen.insert(v).second);
                    CHECK(g.degree(v, c) > 0);
                }
                // BFS reachability from the first vertex.
                Bitset in = to_bitset(g.num_vertices(), comp.vertices);
                std::vector<int> stack{comp.vertices.front()};
                Bitset reached(g.num_vertices());
                reached.set(comp.vertices.front());
                while (!stack.empty()) {
                    int u = stack.back();
                    stack.pop_back();
                    Bitset nb = g.neighbours(u, c) & in & ~reached;
                    for (auto z = nb.find_first(); z != Bitset::npos; z = nb.find_next(z)) {
                        reached.set(z);
                        stack.push_back(static_cast<int>(z));
                    }
                }
                CHECK(reached.count() == comp.vertices.size());

                CHECK(comp.is_odd == !bipartite_by_dfs(g, c, comp.vertices));
                if (comp.is_odd) {
                    REQUIRE(comp.odd_cycle.has_value());
                    const auto& cyc = *comp.odd_cycle;
                    CHECK(cyc.size() % 2 == 1);
                    std::set<int> distinct(cyc.begin(), cyc.end());
                    CHECK(distinct.size() == cyc.size());
                    for (std::size_t i = 0; i < cyc.size(); ++i)
                        CHECK(g.edge_colour(cyc[i], cyc[(i + 1) % cyc.size()]) == c);
                }
            }
        }
    }
}

TEST_CASE("small witnesses: common neighbour, triangle, C5") {
    auto g = complete(3, Colour::Green);
    auto a = g.class_vertices(0);

    auto cn = find_common_neighbour(g, a, 3, 6);
    REQUIRE(cn.has_value());
    CHECK(g.has_edge(*cn, 3));
    CHECK(g.has_edge(*cn, 6));

    auto tri = find_triangle(g, g.class_vertices(0), g.class_vertices(1), g.class_vertices(2),
                             Colour::Green);
    REQUIRE(tri.has_value());
    CHECK(g.edge_colour((*tri)[0], (*tri)[1]) == Colour::Green);
    CHECK(g.edge_colour((*tri)[1], (*tri)[2]) == Colour::Green);
    CHECK(g.edge_colour((*tri)[2], (*tri)[0]) == Colour::Green);

    auto none = find_triangle(g, a, g.class_vertices(1), g.class_vertices(2), Colour::Red);
    CHECK_FALSE(none.has_value());
}

TEST_CASE("C5 search equals exhaustive enumeration on an 11-vertex instance") {
    // v in A, w in B joined by a green edge; D1 subset B, D2 subset C,
    // D3 subset A with the chain pairs green-complete.
    // Layout: A = {0=v, 1..3 = D3}, B = {4=w, 5..7 = D1}, C = {8..10 = D2}.
    std::vector<ColouredEdge> edges = {{0, 4, Colour::Green}};
    for (int d1 = 5; d1 <= 7; ++d1) edges.push_back({0, d1, Colour::Green});
    for (int d1 = 5; d1 <= 7; ++d1)
        for (int d2 = 8; d2 <= 10; ++d2) edges.push_back({d1, d2, Colour::Green});
    for (int d2 = 8; d2 <= 10; ++d2)
        for (int d3 = 1; d3 <= 3; ++d3) edges.push_back({d2, d3, Colour::Green});
    for (int d3 = 1; d3 <= 3; ++d3) edges.push_back({d3, 4, Colour::Green});
    auto g = TripartiteGraph::build({4, 4, 3}, edges);

    auto c5 = find_c5(g, Colour::Green, 0, 4, {5, 6, 7}, {8, 9, 10}, {1, 2, 3});
    REQUIRE(c5.has_value());
    auto cyc = *c5;
    for (int i = 0; i < 5; ++i)
        CHECK(g.edge_colour(cyc[i], cyc[(i + 1) % 5]) == Colour::Green);
    std::set<int> distinct(cyc.begin(), cyc.end());
    CHECK(distinct.size() == 5);

    // Exhaustive enumeration agrees that a C5 of this shape exists.
    bool found = false;
    for (int d1 = 5; d1 <= 7 && !found; ++d1)
        for (int d2 = 8; d2 <= 10 && !found; ++d2)
            for (int d3 = 1; d3 <= 3 && !found; ++d3)
                found = g.edge_colour(0, d1) == Colour::Green &&
                        g.edge_colour(d1, d2) == Colour::Green &&
                        g.edge_colour(d2, d3) == Colour::Green &&
                        g.edge_colour(d3, 4) == Colour::Green &&
                        g.edge_colour(4, 0) == Colour::Green;
    CHECK(found);

    // Break the chain: no witness, and never an invalid one.
    std::vector<ColouredEdge> broken;
    for (auto& e : edges)
        if (!(e.u >= 5 && e.u <= 7 && e.v >= 8 && e.v <= 10)) broken.push_back(e);
    auto g2 = TripartiteGraph::build({4, 4, 3}, broken);
    CHECK_FALSE(find_c5(g2, Colour::Green, 0, 4, {5, 6, 7}, {8, 9, 10}, {1, 2, 3}).has_value());
}

TEST_CASE("find_small_witness dispatcher") {
    auto g = complete(3, Colour::Green);
    WitnessArgs args;
    args.pool = g.class_vertices(0);
    args.u = 3;
    args.v = 6;
    auto w = find_small_witness(g, WitnessKind::CommonNeighbour, args);
    REQUIRE(w.has_value());
    CHECK(std::holds_alternative<int>(*w));
}
