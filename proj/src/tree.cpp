#include "tritree/tree.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <tuple>

#include "tritree/rng.hpp"

namespace tritree {

Tree Tree::from_edges(int t, const std::vector<std::pair<int, int>>& edges) {
    if (t <= 0) throw Error("BadTree", "empty tree");
    if (static_cast<int>(edges.size()) != t - 1)
        throw Error("BadTree", "a tree on t vertices has t-1 edges");
    std::vector<std::vector<int>> adj(t);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= t || v < 0 || v >= t || u == v)
            throw Error("BadTree", "bad edge endpoints");
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    Tree tr;
    tr.t_ = t;
    tr.parent_.assign(t, -1);
    tr.children_.assign(t, {});
    tr.colour_class_.assign(t, 0);

    std::vector<int> cls(t, 0);
    std::queue<int> q;
    cls[0] = 1;
    q.push(0);
    int reached = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        ++reached;
        for (int v : adj[u])
            if (cls[v] == 0) {
                cls[v] = 3 - cls[u];
                tr.parent_[v] = u;
                tr.children_[u].push_back(v);
                q.push(v);
            }
    }
    if (reached != t) throw Error("BadTree", "edge list is not connected");
    for (auto& ch : tr.children_) std::sort(ch.begin(), ch.end());
    for (int v = 0; v < t; ++v) tr.max_degree_ = std::max(tr.max_degree_, tr.degree(v));

    int c1 = static_cast<int>(std::count(cls.begin(), cls.end(), 1));
    int c2 = t - c1;
    bool swap = c2 > c1;
    for (int v = 0; v < t; ++v) tr.colour_class_[v] = swap ? 3 - cls[v] : cls[v];
    tr.t1_ = std::max(c1, c2);
    tr.t2_ = std::min(c1, c2);
    return tr;
}

std::vector<std::pair<int, int>> Tree::edge_list() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(t_ - 1);
    for (int v = 1; v < t_; ++v) out.emplace_back(parent_[v], v);
    return out;
}

std::vector<int> Tree::neighbours(int v) const {
    std::vector<int> out = children_[v];
    if (parent_[v] >= 0) out.push_back(parent_[v]);
    return out;
}

std::tuple<int, int, std::vector<int>> colour_classes(const Tree& t) {
    std::vector<int> cls(t.order());
    for (int v = 0; v < t.order(); ++v) cls[v] = t.colour_class(v);
    return {t.t1(), t.t2(), cls};
}

namespace {

/// Cut-vertex search of the lemma on one component (given as a vertex list
/// whose vertex closest to the tree root is `top`): one DFS computes subtree
/// sizes, then the descent walks from `top` into the lowest-index oversized
/// child while the small-component forest around the current vertex is too
/// light. Pieces strictly above the current vertex count as components too.
int find_cut_vertex(const Tree& t, const std::vector<int>& comp, const std::vector<char>& in_comp,
                    int top, int S, std::vector<int>& subtree) {
    // Iterative post-order over the component, oriented away from `top`.
    std::vector<std::pair<int, int>> stack{{top, 0}};
    std::vector<int> post;
    post.reserve(comp.size());
    while (!stack.empty()) {
        auto& [u, seen] = stack.back();
        const auto& ch = t.children(u);
        while (seen < static_cast<int>(ch.size()) && !in_comp[ch[seen]]) ++seen;
        if (seen < static_cast<int>(ch.size())) {
            stack.emplace_back(ch[seen++], 0);
        } else {
            post.push_back(u);
            stack.pop_back();
        }
    }
    for (int u : post) {
        subtree[u] = 1;
        for (int ch : t.children(u))
            if (in_comp[ch]) subtree[u] += subtree[ch];
    }

    std::int64_t comp_size = static_cast<std::int64_t>(comp.size());
    int x = top;
    while (true) {
        std::int64_t small_total = 0;
        int oversized = -1;
        for (int ch : t.children(x)) {
            if (!in_comp[ch]) continue;
            if (subtree[ch] <= S)
                small_total += subtree[ch];
            else if (oversized == -1)
                oversized = ch;
        }
        std::int64_t above = comp_size - subtree[x];
        if (above > 0 && above <= S) small_total += above;
        if (small_total + 1 > S || oversized == -1) return x;
        x = oversized;
    }
}

}  // namespace

TreeDecomposition s_cut(const Tree& t, int S) {
    if (S < 1) throw Error("BadArguments", "S must be at least 1");
    TreeDecomposition d;
    d.S = S;
    int n = t.order();
    std::vector<char> removed(n, 0);
    std::vector<int> subtree(n, 0);

    // Peel oversized components until all pieces fit.
    while (true) {
        std::vector<int> comp_of(n, -1);
        std::vector<std::vector<int>> comps;
        std::vector<int> top_of;
        for (int v = 0; v < n; ++v) {
            if (removed[v] || comp_of[v] != -1) continue;
            int id = static_cast<int>(comps.size());
            comps.emplace_back();
            std::queue<int> q;
            comp_of[v] = id;
            q.push(v);
            int top = v;
            while (!q.empty()) {
                int u = q.front();
                q.pop();
                comps[id].push_back(u);
                for (int w : t.neighbours(u))
                    if (!removed[w] && comp_of[w] == -1) {
                        comp_of[w] = id;
                        q.push(w);
                    }
            }
            // The component's top: its unique vertex whose parent is outside.
            for (int u : comps[id])
                if (t.parent(u) < 0 || removed[t.parent(u)] || comp_of[t.parent(u)] != id) top = u;
            top_of.push_back(top);
        }
        int target = -1;
        for (std::size_t i = 0; i < comps.size(); ++i)
            if (static_cast<int>(comps[i].size()) > S) {
                target = static_cast<int>(i);
                break;
            }
        if (target == -1) break;
        std::vector<char> in_comp(n, 0);
        for (int u : comps[target]) in_comp[u] = 1;
        int x = find_cut_vertex(t, comps[target], in_comp, top_of[target], S, subtree);
        removed[x] = 1;
        d.cut.push_back(x);
    }
    std::sort(d.cut.begin(), d.cut.end());

    if (!d.cut.empty() && static_cast<std::int64_t>(d.cut.size()) * S >= t.order())
        throw Error("CutBoundViolated", "cut exceeds t/S");

    // Shrubs: components of T - C.
    d.shrub_of.assign(n, -1);
    std::vector<char> in_cut(n, 0);
    for (int x : d.cut) in_cut[x] = 1;
    for (int v = 0; v < n; ++v) {
        if (in_cut[v] || d.shrub_of[v] != -1) continue;
        int id = static_cast<int>(d.shrubs.size());
        d.shrubs.emplace_back();
        std::queue<int> q;
        d.shrub_of[v] = id;
        q.push(v);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            d.shrubs[id].vertices.push_back(u);
            for (int w : t.neighbours(u))
                if (!in_cut[w] && d.shrub_of[w] == -1) {
                    d.shrub_of[w] = id;
                    q.push(w);
                }
        }
        std::sort(d.shrubs[id].vertices.begin(), d.shrubs[id].vertices.end());
        if (static_cast<int>(d.shrubs[id].vertices.size()) > S)
            throw Error("CutBoundViolated", "a shrub exceeds S");
    }

    // Processing order: re-root at a cut vertex adjacent to the first shrub,
    // then cut vertices in BFS order (no later cut vertex on the path from
    // the first), each followed by its child shrubs root-first with ascending
    // labels.
    if (d.cut.empty()) {
        Shrub& s = d.shrubs.front();
        s.root = 0;
        d.oriented_parent.assign(n, -1);
        d.depth.assign(n, 0);
        std::queue<int> q;
        q.push(0);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            d.order.push_back(u);
            for (int w : t.children(u)) {
                d.oriented_parent[w] = u;
                d.depth[w] = d.depth[u] + 1;
                q.push(w);
            }
        }
        return d;
    }

    int root = -1;
    for (int v : d.shrubs.front().vertices)
        for (int w : t.neighbours(v))
            if (in_cut[w] && (root == -1 || w < root)) root = w;
    if (root == -1) throw Error("Internal", "first shrub touches no cut vertex");
    // Orient the whole tree away from `root` once.
    std::vector<int> par(n, -2), depth(n, 0), bfs;
    std::queue<int> q;
    par[root] = -1;
    q.push(root);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        bfs.push_back(u);
        for (int w : t.neighbours(u))
            if (par[w] == -2) {
                par[w] = u;
                depth[w] = depth[u] + 1;
                q.push(w);
            }
    }
    for (int u : bfs)
        if (in_cut[u]) d.cut_order.push_back(u);
    d.oriented_parent = par;
    d.oriented_parent[root] = -1;
    d.depth = depth;

    // Shrub roots and parents under this orientation.
    for (auto& s : d.shrubs) {
        int best = s.vertices.front();
        for (int v : s.vertices)
            if (depth[v] < depth[best]) best = v;
        s.root = best;
        s.parent_cut = par[best];
    }

    std::vector<std::vector<int>> shrubs_of_cut(n);
    for (std::size_t i = 0; i < d.shrubs.size(); ++i)
        shrubs_of_cut[d.shrubs[i].parent_cut].push_back(static_cast<int>(i));

    for (int x : d.cut_order) {
        d.order.push_back(x);
        for (int si : shrubs_of_cut[x]) {
            const Shrub& s = d.shrubs[si];
            std::queue<int> sq;
            sq.push(s.root);
            while (!sq.empty()) {
                int u = sq.front();
                sq.pop();
                d.order.push_back(u);
                for (int w : t.neighbours(u))
                    if (par[w] == u && !in_cut[w] && d.shrub_of[w] == si) sq.push(w);
            }
        }
    }
    if (static_cast<int>(d.order.size()) != n)
        throw Error("Internal", "processing order misses vertices");
    return d;
}

Tree random_tree(int t, int max_degree, std::uint64_t seed) {
    if (t <= 0) throw Error("BadArguments", "t must be positive");
    if (t == 1) return Tree::from_edges(1, {});
    if (t == 2) return Tree::from_edges(2, {{0, 1}});
    if (max_degree < 2) throw Error("Infeasible", "max degree 1 admits no tree on 3+ vertices");

    Rng rng(seed);
    // Pruefer symbols drawn only among vertices with spare capacity; a vertex
    // appearing k times ends with degree k+1.
    std::vector<int> count(t, 0);
    std::vector<int> seq(t - 2);
    std::vector<int> avail(t);
    for (int i = 0; i < t; ++i) avail[i] = i;
    for (int i = 0; i < t - 2; ++i) {
        int pick = static_cast<int>(rng.bounded(avail.size()));
        int v = avail[pick];
        seq[i] = v;
        if (++count[v] == max_degree - 1) {
            avail[pick] = avail.back();
            avail.pop_back();
        }
    }

    // Standard Pruefer decoding.
    std::vector<int> deg(t, 1);
    for (int v : seq) ++deg[v];
    std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
    for (int v = 0; v < t; ++v)
        if (deg[v] == 1) leaves.push(v);
    std::vector<std::pair<int, int>> edges;
    for (int v : seq) {
        int leaf = leaves.top();
        leaves.pop();
        edges.emplace_back(leaf, v);
        if (--deg[v] == 1) leaves.push(v);
    }
    int a = leaves.top();
    leaves.pop();
    int b = leaves.top();
    edges.emplace_back(a, b);

    Tree tr = Tree::from_edges(t, edges);
    if (tr.max_degree() > max_degree) throw Error("Internal", "degree cap violated");
    return tr;
}

}  // namespace tritree
