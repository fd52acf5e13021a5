#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tritree/graph.hpp"

namespace tritree {

struct Matching {
    Colour colour = Colour::Green;
    std::vector<std::pair<int, int>> edges;
    int component_id = -1;

    int size() const { return static_cast<int>(edges.size()); }
    std::vector<int> covered() const;
};

struct Fork {
    int center;
    std::vector<int> prongs;
};

/// Vertex-disjoint family of stars in one colour. `size()` is the total prong
/// count. center_side/prong_side are the two classes of the bipartite witness
/// subgraph the forks live in (they need not be host classes).
struct ForkSystem {
    Colour colour = Colour::Green;
    std::vector<Fork> forks;
    int ratio = 1;
    int component_id = -1;
    std::vector<int> center_side;
    std::vector<int> prong_side;

    int size() const;
    std::vector<std::pair<int, int>> edges() const;
};

enum class CenterSide { Side1, Side2, Best };

/// Maximum-cardinality matching on an explicit edge set (Edmonds' blossom
/// algorithm; components may be non-bipartite).
Matching max_matching(int num_vertices, const std::vector<std::pair<int, int>>& edges,
                      Colour colour_tag = Colour::Green);

/// Maximum connected matching of the colour: the best max_matching over the
/// colour's components (odd components only when require_odd). Ties go to the
/// lowest component id.
std::optional<Matching> max_connected_matching(const TripartiteGraph& g, Colour c,
                                               bool require_odd);

/// Maximum r-fork system in one even (bipartite) component, via max-flow with
/// center capacity r and prong capacity 1. With CenterSide::Best both
/// orientations are tried.
ForkSystem max_fork_system(const TripartiteGraph& g, Colour c, const ColourComponent& comp,
                           int ratio, CenterSide side = CenterSide::Best);

/// Majority-vote + greedy sweep over an eta-complete pair; the result is in
/// one colour and has size at least min(|D|,|D'|)/2 - eta*n.
Matching greedy_monochromatic_matching(const TripartiteGraph& g, const std::vector<int>& d,
                                       const std::vector<int>& d2, const Rational& eta);

/// Near-perfect matching across three class subsets with |A'|>=|B'|>=|C'| and
/// |A'|<=|B'|+|C'|, covering >= |A'|+|B'|+|C'| - 4*eta*n - 1 vertices.
Matching near_perfect_triple_matching(const TripartiteGraph& g, const std::vector<int>& a,
                                      const std::vector<int>& b, const std::vector<int>& c,
                                      const Rational& eta,
                                      std::optional<Colour> colour = std::nullopt);

// Building blocks shared with the extremal handlers.

/// Greedy sweep matching x into y using only edges of colour c.
Matching greedy_pair_matching(const TripartiteGraph& g, Colour c, const std::vector<int>& x,
                              const std::vector<int>& y);

/// Exact maximum matching in the bipartite colour subgraph between x and y
/// (unit-capacity Dinic).
Matching bipartite_max_matching(const TripartiteGraph& g, Colour c, const std::vector<int>& x,
                                const std::vector<int>& y);

/// Recompute and verify every declared invariant; returns violation strings.
std::vector<std::string> validate_matching(const TripartiteGraph& g, const Matching& m,
                                           bool require_connected = true,
                                           bool require_odd_component = false);
std::vector<std::string> validate_fork_system(const TripartiteGraph& g, const ForkSystem& f,
                                              bool require_connected = true);

}  // namespace tritree
