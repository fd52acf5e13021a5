#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "tritree/types.hpp"

namespace tritree {

using Bitset = boost::dynamic_bitset<std::uint64_t>;

struct ColouredEdge {
    int u;
    int v;
    Colour colour;
};

/// Two-coloured tripartite graph. Vertices are globally indexed
/// 0..nA+nB+nC-1, class A first, then B, then C. Adjacency is stored as one
/// bitset per vertex and colour, so neighbourhood intersections run at word
/// speed. Immutable after construction; all queries are const.
class TripartiteGraph {
public:
    TripartiteGraph() = default;

    static TripartiteGraph build(const std::array<int, 3>& class_sizes,
                                 const std::vector<ColouredEdge>& edges,
                                 std::optional<int> n_scale = std::nullopt);

    /// Dense construction without an intermediate edge list: `colour_of` is
    /// called once per cross pair (u < v).
    template <typename F>
    static TripartiteGraph build_dense(const std::array<int, 3>& class_sizes, F&& colour_of,
                                       std::optional<int> n_scale = std::nullopt) {
        TripartiteGraph g;
        g.sizes_ = class_sizes;
        g.total_ = class_sizes[0] + class_sizes[1] + class_sizes[2];
        g.n_scale_ = n_scale.value_or(std::max({class_sizes[0], class_sizes[1], class_sizes[2]}));
        for (auto& a : g.adj_) a.assign(g.total_, Bitset(g.total_));
        for (int u = 0; u < g.total_; ++u)
            for (int v = u + 1; v < g.total_; ++v) {
                if (g.class_of(u) == g.class_of(v)) continue;
                std::optional<Colour> c = colour_of(u, v);
                if (!c) continue;
                auto& a = g.adj_[static_cast<int>(*c)];
                a[u].set(v);
                a[v].set(u);
                ++g.num_edges_;
                ++g.num_edges_c_[static_cast<int>(*c)];
            }
        return g;
    }

    int num_vertices() const { return total_; }
    const std::array<int, 3>& class_sizes() const { return sizes_; }
    int n_scale() const { return n_scale_; }

    int class_of(int v) const {
        return v < sizes_[0] ? 0 : (v < sizes_[0] + sizes_[1] ? 1 : 2);
    }
    /// First global index of a class.
    int class_begin(int cls) const {
        return cls == 0 ? 0 : (cls == 1 ? sizes_[0] : sizes_[0] + sizes_[1]);
    }
    std::vector<int> class_vertices(int cls) const;

    bool has_edge(int u, int v) const { return adj_[0][u].test(v) || adj_[1][u].test(v); }
    std::optional<Colour> edge_colour(int u, int v) const {
        if (adj_[0][u].test(v)) return Colour::Green;
        if (adj_[1][u].test(v)) return Colour::Red;
        return std::nullopt;
    }

    const Bitset& neighbours(int v, Colour c) const { return adj_[static_cast<int>(c)][v]; }
    Bitset neighbours_any(int v) const { return adj_[0][v] | adj_[1][v]; }

    int degree(int v) const { return static_cast<int>(adj_[0][v].count() + adj_[1][v].count()); }
    int degree(int v, Colour c) const { return static_cast<int>(adj_[static_cast<int>(c)][v].count()); }

    std::size_t num_edges() const { return num_edges_; }
    std::size_t num_edges(Colour c) const { return num_edges_c_[static_cast<int>(c)]; }
    std::vector<ColouredEdge> edge_list() const;

private:
    std::array<int, 3> sizes_{};
    int total_ = 0;
    int n_scale_ = 0;
    std::size_t num_edges_ = 0;
    std::array<std::size_t, 2> num_edges_c_{};
    std::array<std::vector<Bitset>, 2> adj_;
};

/// One connected component of a colour subgraph. `vertices` is sorted.
/// For odd (non-bipartite) components, odd_cycle is a genuine odd cycle of
/// that colour (closed, first vertex repeated implicitly).
struct ColourComponent {
    int id = 0;
    Colour colour = Colour::Green;
    std::vector<int> vertices;
    bool is_odd = false;
    std::optional<std::vector<int>> odd_cycle;
};

Rational density(const TripartiteGraph& g, const std::vector<int>& u, const std::vector<int>& w);
Rational density(const TripartiteGraph& g, Colour c, const std::vector<int>& u,
                 const std::vector<int>& w);

/// True iff every vertex of d misses at most eta*n_scale vertices of d2 and
/// vice versa; with a colour, additionally every present edge between d and d2
/// has that colour.
bool is_eta_complete(const TripartiteGraph& g, const std::vector<int>& d,
                     const std::vector<int>& d2, const Rational& eta,
                     std::optional<Colour> colour = std::nullopt);

/// Minimum degree strictly above (2-eta)*n; requires balanced classes.
bool in_class_K_eta(const TripartiteGraph& g, const Rational& eta);

std::vector<ColourComponent> colour_components(const TripartiteGraph& g, Colour c);

// Small-witness search (common neighbour / triangle / 5-cycle). Deterministic:
// lowest-index candidates first. Never returns an invalid witness.
enum class WitnessKind { CommonNeighbour, Triangle, C5 };

struct WitnessArgs {
    std::optional<Colour> colour;
    std::vector<int> pool;                   // CommonNeighbour: the set searched
    int u = -1, v = -1;                      // CommonNeighbour endpoints / C5 edge vw
    std::vector<int> set_a, set_b, set_c;    // Triangle: A',B',C'; C5: D1,D2,D3
};

using Witness = std::variant<int, std::array<int, 3>, std::array<int, 5>>;

std::optional<Witness> find_small_witness(const TripartiteGraph& g, WitnessKind kind,
                                          const WitnessArgs& args);

std::optional<int> find_common_neighbour(const TripartiteGraph& g, const std::vector<int>& pool,
                                         int u, int v, std::optional<Colour> colour = std::nullopt);
std::optional<std::array<int, 3>> find_triangle(const TripartiteGraph& g, const std::vector<int>& a,
                                                const std::vector<int>& b, const std::vector<int>& c,
                                                std::optional<Colour> colour = std::nullopt);
/// c-coloured C5 of the form v-d1-d2-d3-w-v with di drawn from d1s/d2s/d3s.
std::optional<std::array<int, 5>> find_c5(const TripartiteGraph& g, Colour c, int v, int w,
                                          const std::vector<int>& d1s, const std::vector<int>& d2s,
                                          const std::vector<int>& d3s);

Bitset to_bitset(int n, const std::vector<int>& vertices);
std::vector<int> to_vector(const Bitset& b);

}  // namespace tritree
