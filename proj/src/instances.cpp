#include "tritree/instances.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "tritree/rng.hpp"

namespace tritree {

TripartiteGraph gen_random_colouring(int n, double p_green, std::uint64_t seed) {
    if (n < 1) throw Error("BadArguments", "n must be positive");
    Rng rng(seed);
    return TripartiteGraph::build_dense({n, n, n}, [&](int, int) {
        return std::optional<Colour>(rng.bernoulli(p_green) ? Colour::Green : Colour::Red);
    });
}

TripartiteGraph gen_sparse_host(int n, double p, std::uint64_t seed, double p_green) {
    if (n < 1) throw Error("BadArguments", "n must be positive");
    if (!(p > 0.0 && p <= 1.0)) throw Error("BadArguments", "p must lie in (0,1]");
    Rng rng(seed);
    return TripartiteGraph::build_dense({n, n, n}, [&](int, int) -> std::optional<Colour> {
        if (!rng.bernoulli(p)) return std::nullopt;
        return rng.bernoulli(p_green) ? Colour::Green : Colour::Red;
    });
}

namespace {

/// Take `count` vertices off the front of `pool`.
std::vector<int> take(std::vector<int>& pool, int count) {
    if (count > static_cast<int>(pool.size())) throw Error("Internal", "generator pool exhausted");
    std::vector<int> out(pool.begin(), pool.begin() + count);
    pool.erase(pool.begin(), pool.begin() + count);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> shuffled_class(const std::array<int, 3>& sizes, int cls, Rng& rng) {
    int base = cls == 0 ? 0 : (cls == 1 ? sizes[0] : sizes[0] + sizes[1]);
    std::vector<int> v(sizes[cls]);
    for (int i = 0; i < sizes[cls]; ++i) v[i] = base + i;
    rng.shuffle(v);
    return v;
}

int span_int(Rng& rng, int n, double lo, double hi) {
    int a = static_cast<int>(lo * n), b = static_cast<int>(hi * n);
    if (b < a) b = a;
    return static_cast<int>(rng.uniform(a, b));
}

}  // namespace

PlantedInstance gen_pyramid(int n, const Rational& eta, PyramidMode mode, Colour c, Colour cp,
                            std::uint64_t seed) {
    if (n < 60) throw Error("BadArguments", "pyramid plants support n >= 60");
    if (!(eta > Rational(0) && eta < Rational(1, 4)))
        throw Error("BadArguments", "eta must lie in (0, 1/4)");
    Rng rng(seed);
    int slack = static_cast<int>((eta * Rational(n)).floor());
    int two_eta = static_cast<int>((Rational(2) * eta * Rational(n)).ceil());

    int d1_sz = n - static_cast<int>(rng.bounded(slack + 1));
    int d2_sz = n - static_cast<int>(rng.bounded(slack + 1));
    int primes = n - static_cast<int>(rng.bounded(slack + 1));
    int d2p_sz = 0;
    if (rng.bounded(4) != 0 && primes / 2 >= std::max(1, two_eta)) {
        d2p_sz = static_cast<int>(rng.uniform(std::max(1, two_eta), primes / 2));
    }
    int d1p_sz = primes - d2p_sz;

    std::array<int, 3> sizes{n, n, n};
    Rng place = rng.fork();
    auto ca = shuffled_class(sizes, 0, place);
    auto cb = shuffled_class(sizes, 1, place);
    auto cc = shuffled_class(sizes, 2, place);

    PyramidWitness w;
    w.c = c;
    w.cp = cp;
    w.mode = mode;
    w.eta = eta;
    w.d1 = take(ca, d1_sz);
    w.d2 = take(cb, d2_sz);
    w.d1p = take(cc, d1p_sz);
    w.d2p = take(cc, d2p_sz);

    // Region labels: 1 = D1, 2 = D2, 3 = D1', 4 = D2', 0 = slack.
    std::vector<std::uint8_t> label(3 * n, 0);
    for (int v : w.d1) label[v] = 1;
    for (int v : w.d2) label[v] = 2;
    for (int v : w.d1p) label[v] = 3;
    for (int v : w.d2p) label[v] = 4;

    // Unconstrained structured pairs get a per-instance colour bias so both
    // tunnel routes (and both crossing majority outcomes) occur across seeds.
    double bias = std::array<double, 3>{0.0, 0.5, 1.0}[rng.bounded(3)];
    Rng edge_rng = rng.fork();

    auto graph = TripartiteGraph::build_dense({n, n, n}, [&](int u, int v) -> std::optional<Colour> {
        int a = label[u], b = label[v];
        if (a > b) std::swap(a, b);
        if ((a == 1 && b == 3) || (a == 2 && b == 4)) return c;
        if (a == 1 && b == 2) {
            if (mode == PyramidMode::Tunnel) return cp;
            return edge_rng.bernoulli(bias) ? cp : c;
        }
        if ((a == 1 && b == 4) || (a == 2 && b == 3)) {
            if (mode == PyramidMode::Crossing) return cp;
            return edge_rng.bernoulli(bias) ? cp : c;
        }
        return edge_rng.bernoulli(0.5) ? Colour::Green : Colour::Red;
    });
    return {std::move(graph), ExtremalWitness(std::move(w))};
}

PlantedInstance gen_spider(int n, const Rational& eta, SpiderProfile profile, std::uint64_t seed) {
    if (n < 60) throw Error("BadArguments", "spider plants support n >= 60");
    Rng rng(seed);
    Colour c = rng.bounded(2) == 0 ? Colour::Green : Colour::Red;
    int two_eta = static_cast<int>((Rational(2) * eta * Rational(n)).ceil());

    int a1 = 0, b1 = 0, c1 = 0;
    switch (profile) {
        case SpiderProfile::Balanced:
            a1 = span_int(rng, n, 0.76, 0.84);
            b1 = span_int(rng, n, 0.54, 0.60);
            break;
        case SpiderProfile::BalancedWithC1:
            a1 = span_int(rng, n, 0.76, 0.82);
            b1 = span_int(rng, n, 0.54, 0.58);
            c1 = std::max(two_eta, span_int(rng, n, 0.03, 0.04));
            break;
        case SpiderProfile::TwoForks:
            a1 = span_int(rng, n, 0.88, 0.95);
            b1 = span_int(rng, n, 0.62, 0.70);
            break;
        case SpiderProfile::Cover:
            a1 = span_int(rng, n, 0.88, 0.92);
            b1 = span_int(rng, n, 0.62, 0.65);
            c1 = std::max(two_eta, span_int(rng, n, 0.05, 0.06));
            break;
    }
    int a2 = n - a1, b2 = n - b1;
    // Class-2 blocks mirror each other in size (A_C = C_A, B_C = C_B).
    if (a2 < two_eta) {
        a1 = n;
        a2 = 0;
    }
    int c_rest = n - c1 - a2 - b2;  // C_C
    if (c_rest < two_eta)
        throw Error("Internal", "spider profile leaves C_C negligible");

    std::array<int, 3> sizes{n, n, n};
    Rng place = rng.fork();
    auto ca = shuffled_class(sizes, 0, place);
    auto cb = shuffled_class(sizes, 1, place);
    auto cc = shuffled_class(sizes, 2, place);

    SpiderWitness w;
    w.c = c;
    w.eta = eta;
    w.a1 = take(ca, a1);
    w.a_c = take(ca, a2);
    w.a2 = w.a_c;
    w.b1 = take(cb, b1);
    w.b_c = take(cb, b2);
    w.b2 = w.b_c;
    w.c1 = take(cc, c1);
    w.c_a = take(cc, a2);
    w.c_b = take(cc, b2);
    w.c_c = take(cc, c_rest);
    w.c2 = w.c_a;
    w.c2.insert(w.c2.end(), w.c_b.begin(), w.c_b.end());
    w.c2.insert(w.c2.end(), w.c_c.begin(), w.c_c.end());
    std::sort(w.c2.begin(), w.c2.end());

    // Labels: class-1 sets 1..3 (A1,B1,C1), class-2 sets 4..6 (A2,B2,C2).
    std::vector<std::uint8_t> label(3 * n, 0);
    for (int v : w.a1) label[v] = 1;
    for (int v : w.b1) label[v] = 2;
    for (int v : w.c1) label[v] = 3;
    for (int v : w.a2) label[v] = 4;
    for (int v : w.b2) label[v] = 5;
    for (int v : w.c2) label[v] = 6;

    Rng edge_rng = rng.fork();
    auto graph = TripartiteGraph::build_dense({n, n, n}, [&](int u, int v) -> std::optional<Colour> {
        int a = label[u], b = label[v];
        if (a > b) std::swap(a, b);
        bool witness_pair = (a >= 1 && a <= 3 && b >= 4 && b <= 6) && (b - 3 != a);
        if (witness_pair) return c;
        return edge_rng.bernoulli(0.5) ? Colour::Green : Colour::Red;
    });
    return {std::move(graph), ExtremalWitness(std::move(w))};
}

TripartiteGraph default_pipeline_template() {
    // Six clusters, two per class; the green subgraph is connected, contains a
    // triangle, and carries the odd connected matching {02, 34, 15}.
    std::vector<ColouredEdge> edges = {
        {0, 2, Colour::Green}, {0, 4, Colour::Green}, {2, 4, Colour::Green},
        {1, 3, Colour::Green}, {3, 4, Colour::Green}, {1, 5, Colour::Green},
        {3, 5, Colour::Green}, {0, 3, Colour::Red},   {1, 2, Colour::Red},
        {0, 5, Colour::Red},   {1, 4, Colour::Red},   {2, 5, Colour::Red},
    };
    return TripartiteGraph::build({2, 2, 2}, edges);
}

TripartiteGraph gen_planted_host(const TripartiteGraph& reduced_template, int L, double p,
                                 std::uint64_t seed) {
    if (L < 1) throw Error("BadArguments", "cluster size must be positive");
    const auto& ks = reduced_template.class_sizes();
    std::array<int, 3> sizes{ks[0] * L, ks[1] * L, ks[2] * L};
    int host_total = sizes[0] + sizes[1] + sizes[2];

    // Host vertex -> template cluster.
    std::vector<int> cluster(host_total);
    int host_base = 0, cl = 0;
    for (int cls = 0; cls < 3; ++cls) {
        for (int i = 0; i < ks[cls]; ++i, ++cl)
            for (int j = 0; j < L; ++j) cluster[host_base + i * L + j] = cl;
        host_base += sizes[cls];
    }

    Rng rng(seed);
    return TripartiteGraph::build_dense(sizes, [&](int u, int v) -> std::optional<Colour> {
        auto col = reduced_template.edge_colour(cluster[u], cluster[v]);
        if (!col) return std::nullopt;
        if (p < 1.0 && !rng.bernoulli(p)) return std::nullopt;
        return col;
    });
}

// ---------------------------------------------------------------------------
// Oracles.

namespace {

constexpr int kOracleMatchingCap = 14;

int oracle_component_max_matching(const std::vector<std::uint32_t>& adj) {
    int m = static_cast<int>(adj.size());
    std::vector<int> memo(std::size_t(1) << m, -1);
    memo[0] = 0;
    // f(mask) = max matching size inside mask.
    std::vector<std::uint32_t> stack;
    auto rec = [&](auto&& self, std::uint32_t mask) -> int {
        int& r = memo[mask];
        if (r >= 0) return r;
        int v = __builtin_ctz(mask);
        std::uint32_t rest = mask & (mask - 1);  // skip v
        int best = self(self, rest);
        std::uint32_t cand = adj[v] & mask;
        while (cand) {
            int u = __builtin_ctz(cand);
            cand &= cand - 1;
            best = std::max(best, 1 + self(self, mask & ~(1u << v) & ~(1u << u)));
        }
        return r = best;
    };
    (void)stack;
    return rec(rec, (m == 32 ? ~0u : ((1u << m) - 1)));
}

}  // namespace

int oracle_max_connected_matching(const TripartiteGraph& g, Colour c, bool require_odd) {
    if (g.num_vertices() > kOracleMatchingCap)
        throw Error("TooLarge", "matching oracle caps at 14 vertices");
    int best = 0;
    bool found = false;
    for (const auto& comp : colour_components(g, c)) {
        if (require_odd && !comp.is_odd) continue;
        found = true;
        int m = static_cast<int>(comp.vertices.size());
        std::vector<std::uint32_t> adj(m, 0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (i != j && g.neighbours(comp.vertices[i], c).test(comp.vertices[j]))
                    adj[i] |= 1u << j;
        best = std::max(best, oracle_component_max_matching(adj));
    }
    if (!found) throw Error("NotFound", "no suitable component");
    return best;
}

namespace {

int oracle_forks_oriented(const TripartiteGraph& g, Colour c, const std::vector<int>& centers,
                          const std::vector<int>& prongs, int ratio) {
    int nc = static_cast<int>(centers.size());
    std::vector<std::uint32_t> cn(prongs.size(), 0);
    for (std::size_t j = 0; j < prongs.size(); ++j)
        for (int i = 0; i < nc; ++i)
            if (g.neighbours(prongs[j], c).test(centers[i])) cn[j] |= 1u << i;

    std::unordered_map<std::uint64_t, int> memo;
    // Remaining center capacities packed two bits each (ratio <= 3).
    auto rec = [&](auto&& self, std::size_t j, std::uint64_t caps) -> int {
        if (j == prongs.size()) return 0;
        std::uint64_t key = (static_cast<std::uint64_t>(j) << 48) | caps;
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        int best = self(self, j + 1, caps);  // leave prong j unused
        std::uint32_t cand = cn[j];
        while (cand) {
            int i = __builtin_ctz(cand);
            cand &= cand - 1;
            std::uint64_t cap = (caps >> (2 * i)) & 3;
            if (cap == 0) continue;
            best = std::max(best, 1 + self(self, j + 1, caps - (std::uint64_t(1) << (2 * i))));
        }
        memo[key] = best;
        return best;
    };
    std::uint64_t caps = 0;
    for (int i = 0; i < nc; ++i) caps |= static_cast<std::uint64_t>(ratio) << (2 * i);
    return rec(rec, 0, caps);
}

}  // namespace

int oracle_max_fork_system(const TripartiteGraph& g, Colour c, const ColourComponent& comp,
                           int ratio) {
    if (g.num_vertices() > kOracleMatchingCap)
        throw Error("TooLarge", "fork oracle caps at 14 vertices");
    if (comp.is_odd) throw Error("OddComponent", "fork oracle needs an even component");
    if (ratio > 3) throw Error("BadArguments", "fork oracle supports ratio <= 3");

    // Bipartition by BFS parity.
    std::map<int, int> side;
    std::vector<int> stack{comp.vertices.front()};
    side[comp.vertices.front()] = 0;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        const Bitset& nb = g.neighbours(u, c);
        for (auto z = nb.find_first(); z != Bitset::npos; z = nb.find_next(z)) {
            int v = static_cast<int>(z);
            if (!side.count(v)) {
                side[v] = side[u] ^ 1;
                stack.push_back(v);
            }
        }
    }
    std::vector<int> s1, s2;
    for (auto [v, s] : side) (s == 0 ? s1 : s2).push_back(v);
    return std::max(oracle_forks_oriented(g, c, s1, s2, ratio),
                    oracle_forks_oriented(g, c, s2, s1, ratio));
}

bool oracle_tree_embedding(const Tree& t, const TripartiteGraph& host, Colour c) {
    if (t.order() > 12) throw Error("TooLarge", "tree oracle caps at 12 tree vertices");
    if (host.num_vertices() > 18) throw Error("TooLarge", "tree oracle caps at 18 host vertices");

    // BFS order; each vertex is embedded after its parent.
    std::vector<int> order;
    order.reserve(t.order());
    std::vector<int> queue{0};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        order.push_back(queue[i]);
        for (int ch : t.children(queue[i])) queue.push_back(ch);
    }

    std::vector<int> image(t.order(), -1);
    Bitset used(host.num_vertices());
    auto rec = [&](auto&& self, std::size_t idx) -> bool {
        if (idx == order.size()) return true;
        int x = order[idx];
        int par = t.parent(x);
        if (par < 0) {
            for (int v = 0; v < host.num_vertices(); ++v) {
                if (used.test(v)) continue;
                image[x] = v;
                used.set(v);
                if (self(self, idx + 1)) return true;
                used.reset(v);
            }
            return false;
        }
        Bitset cand = host.neighbours(image[par], c) & ~used;
        for (auto z = cand.find_first(); z != Bitset::npos; z = cand.find_next(z)) {
            image[x] = static_cast<int>(z);
            used.set(z);
            if (self(self, idx + 1)) return true;
            used.reset(z);
        }
        return false;
    };
    return rec(rec, 0);
}

}  // namespace tritree
