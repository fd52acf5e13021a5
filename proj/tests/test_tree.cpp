#include <doctest.h>

#include <numeric>
#include <set>

#include "tritree/rng.hpp"
#include "tritree/tree.hpp"

using namespace tritree;

namespace {

Tree path(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) edges.emplace_back(i - 1, i);
    return Tree::from_edges(n, edges);
}

Tree star(int leaves) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return Tree::from_edges(leaves + 1, edges);
}

void check_decomposition(const Tree& t, const TreeDecomposition& d, int S) {
    CHECK(static_cast<std::int64_t>(d.cut.size()) * S < t.order() + S);
    CHECK(Rational(static_cast<std::int64_t>(d.cut.size())) <= Rational(t.order(), S));
    std::set<int> seen(d.cut.begin(), d.cut.end());
    for (const auto& s : d.shrubs) {
        CHECK(static_cast<int>(s.vertices.size()) <= S);
        for (int v : s.vertices) CHECK(seen.insert(v).second);
    }
    CHECK(static_cast<int>(seen.size()) == t.order());
    CHECK(static_cast<int>(d.order.size()) == t.order());

    // Order validity: every vertex's oriented parent appears before it, and no
    // later cut vertex lies on the root path of an earlier one.
    std::vector<int> pos(t.order());
    for (int i = 0; i < t.order(); ++i) pos[d.order[i]] = i;
    for (int v = 0; v < t.order(); ++v)
        if (d.oriented_parent[v] >= 0) CHECK(pos[d.oriented_parent[v]] < pos[v]);
    for (std::size_t i = 0; i < d.cut_order.size(); ++i) {
        int x = d.cut_order[i];
        for (int u = d.oriented_parent[x]; u >= 0; u = d.oriented_parent[u])
            if (d.shrub_of[u] == -1) {
                // u is a cut vertex on the path; it must come earlier.
                CHECK(pos[u] < pos[x]);
            }
    }
}

}  // namespace

TEST_CASE("s_cut on a 10-path with S=3") {
    Tree t = path(10);
    auto d = s_cut(t, 3);
    check_decomposition(t, d, 3);
    CHECK(d.cut.size() == 2);  // the deterministic descent lands on {3, 6}
}

TEST_CASE("s_cut on the star K_{1,9} with S=3 cuts the center") {
    Tree t = star(9);
    auto d = s_cut(t, 3);
    REQUIRE(d.cut.size() == 1);
    CHECK(d.cut[0] == 0);
    CHECK(d.shrubs.size() == 9);
    for (const auto& s : d.shrubs) CHECK(s.vertices.size() == 1);
}

TEST_CASE("s_cut with t <= S leaves no cut") {
    Tree t = path(5);
    auto d = s_cut(t, 5);
    CHECK(d.cut.empty());
    REQUIRE(d.shrubs.size() == 1);
    CHECK(d.shrubs[0].vertices.size() == 5);
    CHECK(d.order.size() == 5);
}

TEST_CASE("s_cut bound and determinism over random trees") {
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng.bounded(400));
        int dmax = 2 + static_cast<int>(rng.bounded(6));
        Tree t = random_tree(n, dmax, rng.next());
        int S = 2 + static_cast<int>(rng.bounded(n > 2 ? n - 2 : 1));
        auto d1 = s_cut(t, S);
        auto d2 = s_cut(t, S);
        check_decomposition(t, d1, S);
        CHECK(d1.cut == d2.cut);
        CHECK(d1.order == d2.order);
    }
}

TEST_CASE("colour classes") {
    auto [t1, t2, cls] = colour_classes(path(5));
    CHECK(t1 == 3);
    CHECK(t2 == 2);
    CHECK(cls.size() == 5);

    auto [s1, s2, scls] = colour_classes(star(9));
    CHECK(s1 == 9);
    CHECK(s2 == 1);

    Rng rng(5);
    Tree t = random_tree(50, 4, 11);
    auto [a, b, map] = colour_classes(t);
    CHECK(a + b == 50);
    CHECK(a >= b);
    for (auto [u, v] : t.edge_list()) CHECK(map[u] != map[v]);
    (void)rng;
}

TEST_CASE("random_tree basics") {
    Tree t2 = random_tree(2, 1, 3);
    CHECK(t2.order() == 2);

    Tree p = random_tree(40, 2, 17);
    CHECK(p.max_degree() == 2);  // the only degree-2 tree is a path

    Tree t100 = random_tree(100, 5, 23);
    CHECK(t100.order() == 100);
    CHECK(t100.max_degree() <= 5);

    CHECK_THROWS_WITH_AS(random_tree(3, 1, 0), doctest::Contains("Infeasible"), Error);

    // Determinism: identical seeds give identical edge lists.
    CHECK(random_tree(64, 4, 5).edge_list() == random_tree(64, 4, 5).edge_list());
    CHECK(random_tree(64, 4, 5).edge_list() != random_tree(64, 4, 6).edge_list());
}
