#include <doctest.h>

#include "tritree/instances.hpp"
#include "tritree/rng.hpp"
#include "tritree/structures.hpp"

using namespace tritree;

namespace {

TripartiteGraph all_green(int n) {
    std::vector<ColouredEdge> edges;
    for (int u = 0; u < 3 * n; ++u)
        for (int v = u + 1; v < 3 * n; ++v)
            if (u / n != v / n) edges.push_back({u, v, Colour::Green});
    return TripartiteGraph::build({n, n, n}, edges);
}

TripartiteGraph random_small(Rng& rng, int per_class_max) {
    int na = 1 + static_cast<int>(rng.bounded(per_class_max));
    int nb = 1 + static_cast<int>(rng.bounded(per_class_max));
    int nc = 1 + static_cast<int>(rng.bounded(per_class_max));
    std::vector<ColouredEdge> edges;
    auto probe = TripartiteGraph::build({na, nb, nc}, {});
    for (int u = 0; u < na + nb + nc; ++u)
        for (int v = u + 1; v < na + nb + nc; ++v) {
            if (probe.class_of(u) == probe.class_of(v)) continue;
            int roll = static_cast<int>(rng.bounded(3));
            if (roll == 0) continue;
            edges.push_back({u, v, roll == 1 ? Colour::Green : Colour::Red});
        }
    return TripartiteGraph::build({na, nb, nc}, edges);
}

}  // namespace

TEST_CASE("max_matching on small graphs") {
    CHECK(max_matching(3, {{0, 1}, {1, 2}, {2, 0}}).size() == 1);  // triangle
    CHECK(max_matching(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}).size() == 3);  // C6
}

TEST_CASE("max_matching agrees with the exhaustive oracle on a Petersen-like instance") {
    // Outer 5-cycle, inner 5-cycle (step 2), spokes; embedded in class terms it
    // is just an abstract 10-vertex edge set for the matcher.
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i) edges.emplace_back(i, (i + 1) % 5);
    for (int i = 0; i < 5; ++i) edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    for (int i = 0; i < 5; ++i) edges.emplace_back(i, 5 + i);
    CHECK(max_matching(10, edges).size() == 5);
}

TEST_CASE("max_connected_matching basics and oracle agreement at m=3") {
    auto g = all_green(3);
    auto m = max_connected_matching(g, Colour::Green, true);
    REQUIRE(m.has_value());
    CHECK(m->size() == 4);  // floor(3m/2) at m=3
    CHECK(m->size() == oracle_max_connected_matching(g, Colour::Green, true));
    CHECK(validate_matching(g, *m, true, true).empty());

    // A single even C6 in green: no odd component.
    auto c6 = TripartiteGraph::build({3, 3, 0}, {{0, 3, Colour::Green},
                                                 {3, 1, Colour::Green},
                                                 {1, 4, Colour::Green},
                                                 {4, 2, Colour::Green},
                                                 {2, 5, Colour::Green},
                                                 {5, 0, Colour::Green}});
    CHECK_THROWS_WITH_AS(max_connected_matching(c6, Colour::Green, true),
                         doctest::Contains("NotFound"), Error);

    // Odd component with matching 2 beats nothing; even component with 4 is
    // ignored under require_odd.
    std::vector<ColouredEdge> edges;
    // Odd part: triangle 0-4-8 plus pendant edge 1-5 attached via 0-5.
    edges.push_back({0, 4, Colour::Green});
    edges.push_back({4, 8, Colour::Green});
    edges.push_back({8, 0, Colour::Green});
    edges.push_back({0, 5, Colour::Green});
    edges.push_back({1, 5, Colour::Green});
    // Even part: path on 2-6, 6-3, 3-7, 7-... kept bipartite, matching 4.
    edges.push_back({2, 6, Colour::Green});
    edges.push_back({6, 10, Colour::Red});
    edges.push_back({3, 7, Colour::Green});
    auto g2 = TripartiteGraph::build({4, 4, 4}, edges);
    auto modd = max_connected_matching(g2, Colour::Green, true);
    REQUIRE(modd.has_value());
    CHECK(modd->size() == 2);
    auto many = max_connected_matching(g2, Colour::Green, false);
    CHECK(many->size() >= modd->size());
}

TEST_CASE("non-odd maximum is never below the odd-restricted one") {
    Rng rng(31337);
    for (int trial = 0; trial < 60; ++trial) {
        auto g = random_small(rng, 4);
        for (Colour c : {Colour::Green, Colour::Red}) {
            std::optional<Matching> odd, any;
            try {
                odd = max_connected_matching(g, c, true);
            } catch (const Error&) {
            }
            try {
                any = max_connected_matching(g, c, false);
            } catch (const Error&) {
            }
            if (odd) {
                REQUIRE(any.has_value());
                CHECK(any->size() >= odd->size());
            }
        }
    }
}

TEST_CASE("fork systems: saturation and matching components") {
    // Complete green K[X,Y] with |X|=2, |Y|=6, centers X, ratio 3: size 6.
    std::vector<ColouredEdge> edges;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 6; ++y) edges.push_back({x, 2 + y, Colour::Green});
    auto g = TripartiteGraph::build({2, 6, 0}, edges);
    auto comps = colour_components(g, Colour::Green);
    REQUIRE(comps.size() == 1);
    auto f = max_fork_system(g, Colour::Green, comps[0], 3, CenterSide::Best);
    CHECK(f.size() == 6);
    CHECK(validate_fork_system(g, f).empty());

    // A perfect-matching component: every fork has one prong.
    auto pm = TripartiteGraph::build({3, 3, 0}, {{0, 3, Colour::Green},
                                                 {1, 4, Colour::Green},
                                                 {2, 5, Colour::Green}});
    for (const auto& comp : colour_components(pm, Colour::Green)) {
        auto fm = max_fork_system(pm, Colour::Green, comp, 3, CenterSide::Side1);
        CHECK(fm.size() == 1);
    }

    // Odd components are refused.
    auto tri = TripartiteGraph::build({1, 1, 1}, {{0, 1, Colour::Green},
                                                  {1, 2, Colour::Green},
                                                  {2, 0, Colour::Green}});
    auto tcomp = colour_components(tri, Colour::Green);
    CHECK_THROWS_WITH_AS(max_fork_system(tri, Colour::Green, tcomp[0], 2),
                         doctest::Contains("OddComponent"), Error);
}

TEST_CASE("flow fork systems equal brute force on random bipartite components") {
    Rng rng(4242);
    int tested = 0;
    for (int trial = 0; trial < 400 && tested < 200; ++trial) {
        int na = 2 + static_cast<int>(rng.bounded(5));
        int nb = 2 + static_cast<int>(rng.bounded(5));
        std::vector<ColouredEdge> edges;
        for (int a = 0; a < na; ++a)
            for (int b = 0; b < nb; ++b)
                if (rng.bernoulli(0.5)) edges.push_back({a, na + b, Colour::Green});
        auto g = TripartiteGraph::build({na, nb, 0}, edges);
        int r = 1 + static_cast<int>(rng.bounded(3));
        for (const auto& comp : colour_components(g, Colour::Green)) {
            if (comp.is_odd) continue;
            auto f = max_fork_system(g, Colour::Green, comp, r, CenterSide::Best);
            CHECK(f.size() == oracle_max_fork_system(g, Colour::Green, comp, r));
            CHECK(validate_fork_system(g, f).empty());
            ++tested;
        }
    }
    CHECK(tested >= 200);
}

TEST_CASE("greedy monochromatic matching meets the m/2 - eta*n bound") {
    // All-green complete bipartite pair.
    std::vector<ColouredEdge> edges;
    for (int a = 0; a < 10; ++a)
        for (int b = 0; b < 10; ++b) edges.push_back({a, 10 + b, Colour::Green});
    auto g = TripartiteGraph::build({10, 10, 0}, edges);
    auto m = greedy_monochromatic_matching(g, g.class_vertices(0), g.class_vertices(1), Rational(0));
    CHECK(m.size() == 10);
    CHECK(m.colour == Colour::Green);

    // Random colourings: the bound is asserted inside; run many.
    Rng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<ColouredEdge> es;
        for (int a = 0; a < 10; ++a)
            for (int b = 0; b < 10; ++b)
                es.push_back({a, 10 + b, rng.bernoulli(0.5) ? Colour::Green : Colour::Red});
        auto h = TripartiteGraph::build({10, 10, 0}, es);
        auto mm = greedy_monochromatic_matching(h, h.class_vertices(0), h.class_vertices(1),
                                                Rational(1, 10));
        CHECK(mm.size() >= 4);  // 10/2 - (1/10)*10
    }

    // Half of D prefers red, half green, on a complete pair.
    std::vector<ColouredEdge> split;
    for (int a = 0; a < 10; ++a)
        for (int b = 0; b < 10; ++b)
            split.push_back({a, 10 + b, a < 5 ? Colour::Red : Colour::Green});
    auto hs = TripartiteGraph::build({10, 10, 0}, split);
    auto ms = greedy_monochromatic_matching(hs, hs.class_vertices(0), hs.class_vertices(1),
                                            Rational(0));
    CHECK(ms.size() >= 5);

    // Missing eta-completeness is rejected.
    auto sparse = TripartiteGraph::build({10, 10, 0}, {{0, 10, Colour::Green}});
    CHECK_THROWS_WITH_AS(greedy_monochromatic_matching(sparse, sparse.class_vertices(0),
                                                       sparse.class_vertices(1), Rational(1, 10)),
                         doctest::Contains("HypothesisViolated"), Error);
}

TEST_CASE("near-perfect triple matching") {
    auto g = all_green(4);
    auto a = g.class_vertices(0), b = g.class_vertices(1), c = g.class_vertices(2);

    // Balanced complete case: covers all 12 vertices (>= 12 - 0 - 1).
    auto m = near_perfect_triple_matching(g, a, b, c, Rational(0), Colour::Green);
    CHECK(2 * m.size() >= 11);

    // |A'|=6, |B'|=3, |C'|=3 inside all-green K_{6,6,6}: x=0, y=3, all covered.
    auto g6 = all_green(6);
    std::vector<int> a6 = {0, 1, 2, 3, 4, 5}, b6 = {6, 7, 8}, c6 = {12, 13, 14};
    auto m6 = near_perfect_triple_matching(g6, a6, b6, c6, Rational(0), Colour::Green);
    CHECK(2 * m6.size() == 12);

    // Precondition: |A'| <= |B' u C'|.
    std::vector<int> too_big = {0, 1, 2, 3, 4, 5}, small_b = {6, 7}, small_c = {12};
    CHECK_THROWS_WITH_AS(
        near_perfect_triple_matching(g6, too_big, small_b, small_c, Rational(0), Colour::Green),
        doctest::Contains("SizeHypothesisViolated"), Error);
}

TEST_CASE("blossom and fork finders agree with oracles on random small instances") {
    Rng rng(555);
    int runs = 0;
    for (int trial = 0; trial < 150; ++trial) {
        auto g = random_small(rng, 4);
        if (g.num_vertices() > 12) continue;
        for (Colour c : {Colour::Green, Colour::Red}) {
            for (bool odd : {false, true}) {
                int fast = -1, slow = -1;
                try {
                    fast = max_connected_matching(g, c, odd)->size();
                } catch (const Error&) {
                }
                try {
                    slow = oracle_max_connected_matching(g, c, odd);
                } catch (const Error&) {
                }
                CHECK(fast == slow);
                ++runs;
            }
        }
    }
    CHECK(runs > 100);
}
