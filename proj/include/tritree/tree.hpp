#pragma once

#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "tritree/types.hpp"

namespace tritree {

/// Rooted tree on vertices 0..t-1 (root 0). colour_class holds the unique
/// 2-colouring as 1/2, normalized so class 1 is the larger one.
class Tree {
public:
    static Tree from_edges(int t, const std::vector<std::pair<int, int>>& edges);

    int order() const { return t_; }
    int parent(int v) const { return parent_[v]; }
    const std::vector<int>& children(int v) const { return children_[v]; }
    int max_degree() const { return max_degree_; }
    int degree(int v) const {
        return static_cast<int>(children_[v].size()) + (parent_[v] >= 0 ? 1 : 0);
    }
    bool adjacent(int u, int v) const { return parent_[u] == v || parent_[v] == u; }

    int colour_class(int v) const { return colour_class_[v]; }
    int t1() const { return t1_; }
    int t2() const { return t2_; }

    std::vector<std::pair<int, int>> edge_list() const;
    std::vector<int> neighbours(int v) const;

private:
    int t_ = 0;
    int max_degree_ = 0;
    int t1_ = 0, t2_ = 0;
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
    std::vector<int> colour_class_;
};

struct Shrub {
    std::vector<int> vertices;  // sorted
    int root = -1;              // the unique vertex adjacent to parent_cut
    int parent_cut = -1;        // -1 only when the cut is empty
};

/// S-cut of a tree plus everything the embedding stage needs: the shrubs with
/// roots and parent cut vertices, the cut-vertex order (no later cut vertex on
/// the path from the first), and the global processing order.
struct TreeDecomposition {
    int S = 0;
    std::vector<int> cut;        // sorted
    std::vector<Shrub> shrubs;
    std::vector<int> cut_order;  // processing order of cut vertices
    std::vector<int> order;      // full processing order of V(T)
    std::vector<int> shrub_of;   // per vertex: shrub index, -1 for cut vertices
    // Orientation away from the processing root (the first cut vertex, or
    // tree vertex 0 when the cut is empty).
    std::vector<int> oriented_parent;  // -1 at the root
    std::vector<int> depth;
};

/// Iterated cut-vertex extraction: |C| <= t/S and every shrub has <= S
/// vertices. Deterministic (lowest-index descent).
TreeDecomposition s_cut(const Tree& t, int S);

/// (t1, t2, class map) with t1 >= t2.
std::tuple<int, int, std::vector<int>> colour_classes(const Tree& t);

/// Degree-bounded random tree: Pruefer sequence drawn symbol by symbol among
/// vertices with remaining degree capacity. Deterministic per seed.
Tree random_tree(int t, int max_degree, std::uint64_t seed);

}  // namespace tritree
