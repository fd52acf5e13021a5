#include "tritree/graph.hpp"

#include <algorithm>
#include <queue>

namespace tritree {

TripartiteGraph TripartiteGraph::build(const std::array<int, 3>& class_sizes,
                                       const std::vector<ColouredEdge>& edges,
                                       std::optional<int> n_scale) {
    for (int s : class_sizes)
        if (s < 0) throw Error("BadClassSize", "negative class size");
    TripartiteGraph g;
    g.sizes_ = class_sizes;
    g.total_ = class_sizes[0] + class_sizes[1] + class_sizes[2];
    g.n_scale_ = n_scale.value_or(std::max({class_sizes[0], class_sizes[1], class_sizes[2]}));
    for (auto& a : g.adj_) a.assign(g.total_, Bitset(g.total_));

    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= g.total_ || e.v < 0 || e.v >= g.total_)
            throw Error("IndexOutOfRange",
                        "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
        if (e.u == e.v || g.class_of(e.u) == g.class_of(e.v))
            throw Error("IntraClassEdge",
                        "endpoints " + std::to_string(e.u) + "," + std::to_string(e.v) +
                            " share a class");
        if (g.has_edge(e.u, e.v)) {
            if (g.edge_colour(e.u, e.v) != e.colour)
                throw Error("DuplicateEdge", "conflicting colours for (" + std::to_string(e.u) +
                                                 "," + std::to_string(e.v) + ")");
            continue;
        }
        auto& a = g.adj_[static_cast<int>(e.colour)];
        a[e.u].set(e.v);
        a[e.v].set(e.u);
        ++g.num_edges_;
        ++g.num_edges_c_[static_cast<int>(e.colour)];
    }
    return g;
}

std::vector<int> TripartiteGraph::class_vertices(int cls) const {
    std::vector<int> out;
    int b = class_begin(cls);
    out.reserve(sizes_[cls]);
    for (int i = 0; i < sizes_[cls]; ++i) out.push_back(b + i);
    return out;
}

std::vector<ColouredEdge> TripartiteGraph::edge_list() const {
    std::vector<ColouredEdge> out;
    out.reserve(num_edges_);
    for (int u = 0; u < total_; ++u)
        for (int c = 0; c < 2; ++c)
            for (auto v = adj_[c][u].find_first(); v != Bitset::npos; v = adj_[c][u].find_next(v))
                if (static_cast<int>(v) > u)
                    out.push_back({u, static_cast<int>(v), static_cast<Colour>(c)});
    return out;
}

Bitset to_bitset(int n, const std::vector<int>& vertices) {
    Bitset b(n);
    for (int v : vertices) b.set(v);
    return b;
}

std::vector<int> to_vector(const Bitset& b) {
    std::vector<int> out;
    out.reserve(b.count());
    for (auto v = b.find_first(); v != Bitset::npos; v = b.find_next(v))
        out.push_back(static_cast<int>(v));
    return out;
}

namespace {

Rational density_impl(const TripartiteGraph& g, std::optional<Colour> c, const std::vector<int>& u,
                      const std::vector<int>& w) {
    if (u.empty() || w.empty()) throw Error("EmptySide", "density over an empty set");
    Bitset wb = to_bitset(g.num_vertices(), u);
    if ((wb & to_bitset(g.num_vertices(), w)).any())
        throw Error("OverlappingSets", "density sides intersect");
    Bitset side = to_bitset(g.num_vertices(), w);
    std::int64_t edges = 0;
    for (int x : u) {
        if (c)
            edges += static_cast<std::int64_t>((g.neighbours(x, *c) & side).count());
        else
            edges += static_cast<std::int64_t>(((g.neighbours(x, Colour::Green) | g.neighbours(x, Colour::Red)) & side).count());
    }
    return {edges, static_cast<std::int64_t>(u.size()) * static_cast<std::int64_t>(w.size())};
}

}  // namespace

Rational density(const TripartiteGraph& g, const std::vector<int>& u, const std::vector<int>& w) {
    return density_impl(g, std::nullopt, u, w);
}

Rational density(const TripartiteGraph& g, Colour c, const std::vector<int>& u,
                 const std::vector<int>& w) {
    return density_impl(g, c, u, w);
}

bool is_eta_complete(const TripartiteGraph& g, const std::vector<int>& d,
                     const std::vector<int>& d2, const Rational& eta,
                     std::optional<Colour> colour) {
    int n = g.num_vertices();
    Bitset bd = to_bitset(n, d), bd2 = to_bitset(n, d2);
    if ((bd & bd2).any()) throw Error("OverlappingSets", "eta-completeness sides intersect");
    // Sides may be unions across classes, but never share a class.
    std::array<bool, 3> in_d{}, in_d2{};
    for (int v : d) in_d[g.class_of(v)] = true;
    for (int v : d2) in_d2[g.class_of(v)] = true;
    for (int k = 0; k < 3; ++k)
        if (in_d[k] && in_d2[k])
            throw Error("OverlappingSets", "sides contain an intra-class pair");

    Rational budget = eta * Rational(g.n_scale());
    auto side_ok = [&](const std::vector<int>& from, const Bitset& target, std::size_t target_size) {
        for (int v : from) {
            Bitset adj = colour ? (g.neighbours(v, *colour) & target) : (g.neighbours_any(v) & target);
            std::int64_t missed = static_cast<std::int64_t>(target_size) - static_cast<std::int64_t>(adj.count());
            if (Rational(missed) > budget) return false;
            if (colour) {
                // All present edges into the target must carry the colour.
                if ((g.neighbours(v, other(*colour)) & target).any()) return false;
            }
        }
        return true;
    };
    return side_ok(d, bd2, d2.size()) && side_ok(d2, bd, d.size());
}

bool in_class_K_eta(const TripartiteGraph& g, const Rational& eta) {
    const auto& s = g.class_sizes();
    if (s[0] != s[1] || s[1] != s[2]) throw Error("UnbalancedClasses", "K_eta needs balanced classes");
    Rational threshold = (Rational(2) - eta) * Rational(s[0]);
    for (int v = 0; v < g.num_vertices(); ++v)
        if (Rational(g.degree(v)) <= threshold) return false;
    return true;
}

std::vector<ColourComponent> colour_components(const TripartiteGraph& g, Colour c) {
    int n = g.num_vertices();
    std::vector<int> side(n, -1), parent(n, -1), depth(n, 0);
    std::vector<ColourComponent> out;

    for (int start = 0; start < n; ++start) {
        if (side[start] != -1 || g.degree(start, c) == 0) continue;
        ColourComponent comp;
        comp.id = static_cast<int>(out.size());
        comp.colour = c;
        std::queue<int> q;
        side[start] = 0;
        q.push(start);
        std::optional<std::pair<int, int>> odd_edge;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            comp.vertices.push_back(u);
            const Bitset& nb = g.neighbours(u, c);
            for (auto w = nb.find_first(); w != Bitset::npos; w = nb.find_next(w)) {
                int v = static_cast<int>(w);
                if (side[v] == -1) {
                    side[v] = side[u] ^ 1;
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    q.push(v);
                } else if (side[v] == side[u] && !odd_edge) {
                    odd_edge = {u, v};
                }
            }
        }
        std::sort(comp.vertices.begin(), comp.vertices.end());
        comp.is_odd = odd_edge.has_value();
        if (odd_edge) {
            // BFS-tree paths to the lowest common ancestor are vertex-disjoint,
            // so u -> anc -> v -> u is a genuine cycle; equal sides make it odd.
            auto [u, v] = *odd_edge;
            std::vector<int> pu{u}, pv{v};
            int a = u, b = v;
            while (depth[a] > depth[b]) pu.push_back(a = parent[a]);
            while (depth[b] > depth[a]) pv.push_back(b = parent[b]);
            while (a != b) {
                pu.push_back(a = parent[a]);
                pv.push_back(b = parent[b]);
            }
            std::vector<int> cycle(pu.begin(), pu.end());  // u .. anc
            for (auto it = pv.rbegin() + 1; it != pv.rend(); ++it) cycle.push_back(*it);
            comp.odd_cycle = std::move(cycle);
        }
        out.push_back(std::move(comp));
    }
    return out;
}

std::optional<int> find_common_neighbour(const TripartiteGraph& g, const std::vector<int>& pool,
                                         int u, int v, std::optional<Colour> colour) {
    for (int x : pool) {
        bool ok = colour ? (g.neighbours(x, *colour).test(u) && g.neighbours(x, *colour).test(v))
                         : (g.has_edge(x, u) && g.has_edge(x, v));
        if (ok) return x;
    }
    return std::nullopt;
}

std::optional<std::array<int, 3>> find_triangle(const TripartiteGraph& g, const std::vector<int>& a,
                                                const std::vector<int>& b, const std::vector<int>& c,
                                                std::optional<Colour> colour) {
    int n = g.num_vertices();
    Bitset bc = to_bitset(n, c);
    auto nbrs = [&](int v) { return colour ? g.neighbours(v, *colour) : g.neighbours_any(v); };
    for (int x : a)
        for (int y : b) {
            bool edge = colour ? g.neighbours(x, *colour).test(y) : g.has_edge(x, y);
            if (!edge) continue;
            Bitset common = nbrs(x) & nbrs(y) & bc;
            auto z = common.find_first();
            if (z != Bitset::npos) return std::array<int, 3>{x, y, static_cast<int>(z)};
        }
    return std::nullopt;
}

std::optional<std::array<int, 5>> find_c5(const TripartiteGraph& g, Colour c, int v, int w,
                                          const std::vector<int>& d1s, const std::vector<int>& d2s,
                                          const std::vector<int>& d3s) {
    int n = g.num_vertices();
    if (!g.neighbours(v, c).test(w)) throw Error("BadArguments", "vw is not an edge of the colour");
    Bitset b3 = to_bitset(n, d3s) & g.neighbours(w, c);
    for (int d1 : d1s) {
        if (!g.neighbours(v, c).test(d1)) continue;
        for (int d2 : d2s) {
            if (d2 == v || d2 == w || !g.neighbours(d1, c).test(d2)) continue;
            Bitset cand = g.neighbours(d2, c) & b3;
            for (auto z = cand.find_first(); z != Bitset::npos; z = cand.find_next(z)) {
                int d3 = static_cast<int>(z);
                if (d3 == v || d3 == d1) continue;
                return std::array<int, 5>{v, d1, d2, d3, w};
            }
        }
    }
    return std::nullopt;
}

std::optional<Witness> find_small_witness(const TripartiteGraph& g, WitnessKind kind,
                                          const WitnessArgs& args) {
    switch (kind) {
        case WitnessKind::CommonNeighbour: {
            auto r = find_common_neighbour(g, args.pool, args.u, args.v, args.colour);
            if (r) return Witness{*r};
            return std::nullopt;
        }
        case WitnessKind::Triangle: {
            auto r = find_triangle(g, args.set_a, args.set_b, args.set_c, args.colour);
            if (r) return Witness{*r};
            return std::nullopt;
        }
        case WitnessKind::C5: {
            if (!args.colour) throw Error("BadArguments", "C5 search needs a colour");
            auto r = find_c5(g, *args.colour, args.u, args.v, args.set_a, args.set_b, args.set_c);
            if (r) return Witness{*r};
            return std::nullopt;
        }
    }
    throw Error("BadArguments", "unknown witness kind");
}

}  // namespace tritree
