#include "tritree/structures.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

namespace tritree {

std::vector<int> Matching::covered() const {
    std::vector<int> out;
    out.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        out.push_back(u);
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int ForkSystem::size() const {
    int s = 0;
    for (const auto& f : forks) s += static_cast<int>(f.prongs.size());
    return s;
}

std::vector<std::pair<int, int>> ForkSystem::edges() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& f : forks)
        for (int p : f.prongs) out.emplace_back(f.center, p);
    return out;
}

Matching max_matching(int num_vertices, const std::vector<std::pair<int, int>>& edges,
                      Colour colour_tag) {
    using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    BGraph bg(num_vertices);
    for (auto [u, v] : edges) boost::add_edge(u, v, bg);
    std::vector<boost::graph_traits<BGraph>::vertex_descriptor> mate(num_vertices);
    bool ok = boost::checked_edmonds_maximum_cardinality_matching(bg, &mate[0]);
    if (!ok) throw Error("MatchingInternal", "matching verification failed");
    Matching m;
    m.colour = colour_tag;
    for (int v = 0; v < num_vertices; ++v) {
        auto w = mate[v];
        if (w != boost::graph_traits<BGraph>::null_vertex() && static_cast<int>(w) > v)
            m.edges.emplace_back(v, static_cast<int>(w));
    }
    return m;
}

namespace {

std::vector<std::pair<int, int>> component_edges(const TripartiteGraph& g, Colour c,
                                                 const ColourComponent& comp) {
    std::vector<std::pair<int, int>> out;
    Bitset in = to_bitset(g.num_vertices(), comp.vertices);
    for (int u : comp.vertices) {
        Bitset nb = g.neighbours(u, c) & in;
        for (auto w = nb.find_first(); w != Bitset::npos; w = nb.find_next(w))
            if (static_cast<int>(w) > u) out.emplace_back(u, static_cast<int>(w));
    }
    return out;
}

/// Unit/short-capacity Dinic, small graphs only.
class Dinic {
public:
    explicit Dinic(int n) : head_(n, -1) {}

    void add_edge(int u, int v, int cap) {
        edges_.push_back({v, head_[u], cap});
        head_[u] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({u, head_[v], 0});
        head_[v] = static_cast<int>(edges_.size()) - 1;
    }

    int max_flow(int s, int t) {
        int flow = 0;
        while (bfs(s, t)) {
            iter_ = head_;
            int f;
            while ((f = dfs(s, t, INT32_MAX)) > 0) flow += f;
        }
        return flow;
    }

    /// Flow actually pushed on forward edge index i (edges added in pairs).
    int flow_on(int i) const { return edges_[2 * i + 1].cap; }

private:
    struct E {
        int to, next, cap;
    };

    bool bfs(int s, int t) {
        level_.assign(head_.size(), -1);
        std::queue<int> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int e = head_[u]; e != -1; e = edges_[e].next)
                if (edges_[e].cap > 0 && level_[edges_[e].to] == -1) {
                    level_[edges_[e].to] = level_[u] + 1;
                    q.push(edges_[e].to);
                }
        }
        return level_[t] != -1;
    }

    int dfs(int u, int t, int f) {
        if (u == t) return f;
        for (int& e = iter_[u]; e != -1; e = edges_[e].next) {
            auto& ed = edges_[e];
            if (ed.cap > 0 && level_[ed.to] == level_[u] + 1) {
                int d = dfs(ed.to, t, std::min(f, ed.cap));
                if (d > 0) {
                    ed.cap -= d;
                    edges_[e ^ 1].cap += d;
                    return d;
                }
            }
        }
        return 0;
    }

    std::vector<E> edges_;
    std::vector<int> head_, level_, iter_;
};

/// Bipartition of an even component (side of each vertex by BFS parity).
std::pair<std::vector<int>, std::vector<int>> component_bipartition(const TripartiteGraph& g,
                                                                    Colour c,
                                                                    const ColourComponent& comp) {
    std::map<int, int> side;
    std::queue<int> q;
    side[comp.vertices.front()] = 0;
    q.push(comp.vertices.front());
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        const Bitset& nb = g.neighbours(u, c);
        for (auto w = nb.find_first(); w != Bitset::npos; w = nb.find_next(w)) {
            int v = static_cast<int>(w);
            auto it = side.find(v);
            if (it == side.end()) {
                side[v] = side[u] ^ 1;
                q.push(v);
            }
        }
    }
    std::pair<std::vector<int>, std::vector<int>> out;
    for (auto [v, s] : side) (s == 0 ? out.first : out.second).push_back(v);
    return out;
}

ForkSystem fork_system_oriented(const TripartiteGraph& g, Colour c, const ColourComponent& comp,
                                const std::vector<int>& centers, const std::vector<int>& prongs,
                                int ratio) {
    int nc = static_cast<int>(centers.size()), np = static_cast<int>(prongs.size());
    Dinic net(nc + np + 2);
    int src = nc + np, dst = nc + np + 1;
    std::map<int, int> center_idx, prong_idx;
    for (int i = 0; i < nc; ++i) center_idx[centers[i]] = i;
    for (int j = 0; j < np; ++j) prong_idx[prongs[j]] = j;

    std::vector<std::pair<int, int>> arc_of;  // forward-edge order: (center i, prong j)
    for (int i = 0; i < nc; ++i) net.add_edge(src, i, ratio);
    for (int j = 0; j < np; ++j) net.add_edge(nc + j, dst, 1);
    for (int i = 0; i < nc; ++i) {
        Bitset nb = g.neighbours(centers[i], c);
        for (auto w = nb.find_first(); w != Bitset::npos; w = nb.find_next(w)) {
            auto it = prong_idx.find(static_cast<int>(w));
            if (it == prong_idx.end()) continue;
            net.add_edge(i, nc + it->second, 1);
            arc_of.emplace_back(i, it->second);
        }
    }
    net.max_flow(src, dst);

    std::vector<Fork> forks(nc);
    for (int i = 0; i < nc; ++i) forks[i].center = centers[i];
    for (std::size_t a = 0; a < arc_of.size(); ++a)
        if (net.flow_on(static_cast<int>(nc + np + a)) > 0)
            forks[arc_of[a].first].prongs.push_back(prongs[arc_of[a].second]);

    ForkSystem fs;
    fs.colour = c;
    fs.ratio = ratio;
    fs.component_id = comp.id;
    fs.center_side = centers;
    fs.prong_side = prongs;
    for (auto& f : forks)
        if (!f.prongs.empty()) fs.forks.push_back(std::move(f));
    return fs;
}

}  // namespace

std::optional<Matching> max_connected_matching(const TripartiteGraph& g, Colour c,
                                               bool require_odd) {
    auto comps = colour_components(g, c);
    std::optional<Matching> best;
    for (const auto& comp : comps) {
        if (require_odd && !comp.is_odd) continue;
        Matching m = max_matching(g.num_vertices(), component_edges(g, c, comp), c);
        m.component_id = comp.id;
        if (!best || m.size() > best->size()) best = std::move(m);
    }
    if (!best) throw Error("NotFound", require_odd ? "no odd component in this colour"
                                                   : "no component in this colour");
    return best;
}

ForkSystem max_fork_system(const TripartiteGraph& g, Colour c, const ColourComponent& comp,
                           int ratio, CenterSide side) {
    if (comp.is_odd)
        throw Error("OddComponent", "fork-system maximization runs on even components only");
    auto [s1, s2] = component_bipartition(g, c, comp);
    switch (side) {
        case CenterSide::Side1:
            return fork_system_oriented(g, c, comp, s1, s2, ratio);
        case CenterSide::Side2:
            return fork_system_oriented(g, c, comp, s2, s1, ratio);
        case CenterSide::Best: {
            ForkSystem a = fork_system_oriented(g, c, comp, s1, s2, ratio);
            ForkSystem b = fork_system_oriented(g, c, comp, s2, s1, ratio);
            return a.size() >= b.size() ? a : b;
        }
    }
    throw Error("BadArguments", "unknown center side");
}

Matching greedy_pair_matching(const TripartiteGraph& g, Colour c, const std::vector<int>& x,
                              const std::vector<int>& y) {
    Matching m;
    m.colour = c;
    Bitset avail = to_bitset(g.num_vertices(), y);
    for (int v : x) {
        Bitset cand = g.neighbours(v, c) & avail;
        auto w = cand.find_first();
        if (w == Bitset::npos) continue;
        avail.reset(w);
        m.edges.emplace_back(v, static_cast<int>(w));
    }
    return m;
}

Matching bipartite_max_matching(const TripartiteGraph& g, Colour c, const std::vector<int>& x,
                                const std::vector<int>& y) {
    int nx = static_cast<int>(x.size()), ny = static_cast<int>(y.size());
    Dinic net(nx + ny + 2);
    int src = nx + ny, dst = nx + ny + 1;
    std::map<int, int> yi;
    for (int j = 0; j < ny; ++j) yi[y[j]] = j;
    std::vector<std::pair<int, int>> arc_of;
    for (int i = 0; i < nx; ++i) net.add_edge(src, i, 1);
    for (int j = 0; j < ny; ++j) net.add_edge(nx + j, dst, 1);
    for (int i = 0; i < nx; ++i) {
        Bitset nb = g.neighbours(x[i], c);
        for (auto w = nb.find_first(); w != Bitset::npos; w = nb.find_next(w)) {
            auto it = yi.find(static_cast<int>(w));
            if (it == yi.end()) continue;
            net.add_edge(i, nx + it->second, 1);
            arc_of.emplace_back(i, it->second);
        }
    }
    net.max_flow(src, dst);
    Matching m;
    m.colour = c;
    for (std::size_t a = 0; a < arc_of.size(); ++a)
        if (net.flow_on(static_cast<int>(nx + ny + a)) > 0)
            m.edges.emplace_back(x[arc_of[a].first], y[arc_of[a].second]);
    return m;
}

Matching greedy_monochromatic_matching(const TripartiteGraph& g, const std::vector<int>& d,
                                       const std::vector<int>& d2, const Rational& eta) {
    if (!is_eta_complete(g, d, d2, eta))
        throw Error("HypothesisViolated", "pair is not eta-complete");
    const std::vector<int>& small = d.size() <= d2.size() ? d : d2;
    const std::vector<int>& big = d.size() <= d2.size() ? d2 : d;
    Bitset bigb = to_bitset(g.num_vertices(), big);

    // Majority vote per vertex of the smaller side, then greedy sweep with the
    // winning colour's voters.
    std::vector<int> red_voters, green_voters;
    for (int v : small) {
        std::size_t r = (g.neighbours(v, Colour::Red) & bigb).count();
        std::size_t gr = (g.neighbours(v, Colour::Green) & bigb).count();
        (r > gr ? red_voters : green_voters).push_back(v);
    }
    Colour c = green_voters.size() >= red_voters.size() ? Colour::Green : Colour::Red;
    Matching m = greedy_pair_matching(g, c, c == Colour::Green ? green_voters : red_voters, big);

    std::int64_t mm = static_cast<std::int64_t>(std::min(d.size(), d2.size()));
    Rational bound = Rational(mm, 2) - eta * Rational(g.n_scale());
    if (Rational(m.size()) < bound)
        throw Error("ConstructionFailed", "greedy matching misses the m/2 - eta*n bound");
    return m;
}

Matching near_perfect_triple_matching(const TripartiteGraph& g, const std::vector<int>& a,
                                      const std::vector<int>& b, const std::vector<int>& c,
                                      const Rational& eta, std::optional<Colour> colour) {
    if (!(a.size() >= b.size() && b.size() >= c.size()))
        throw Error("SizeHypothesisViolated", "need |A'| >= |B'| >= |C'|");
    if (a.size() > b.size() + c.size())
        throw Error("SizeHypothesisViolated", "need |A'| <= |B'| + |C'|");

    std::int64_t x = static_cast<std::int64_t>(b.size()) - static_cast<std::int64_t>(c.size());
    std::int64_t y = (static_cast<std::int64_t>(a.size()) - x) / 2;

    std::vector<int> ub(b.begin(), b.begin() + x + y);
    std::vector<int> uc(c.begin(), c.begin() + y);
    std::vector<int> u = ub;
    u.insert(u.end(), uc.begin(), uc.end());
    std::vector<int> w(b.begin() + x + y, b.end());
    std::vector<int> w2(c.begin() + y, c.end());
    std::vector<int> u2(a.begin(), a.begin() + u.size());

    Colour col = colour.value_or(Colour::Green);
    auto sweep = [&](const std::vector<int>& p, const std::vector<int>& q) {
        if (colour) return greedy_pair_matching(g, col, p, q);
        // No colour restriction: sweep over present edges of either colour.
        Matching m;
        Bitset avail = to_bitset(g.num_vertices(), q);
        for (int v : p) {
            Bitset cand = (g.neighbours(v, Colour::Green) | g.neighbours(v, Colour::Red)) & avail;
            auto z = cand.find_first();
            if (z == Bitset::npos) continue;
            avail.reset(z);
            m.edges.emplace_back(v, static_cast<int>(z));
        }
        return m;
    };

    Matching m1 = sweep(u, u2);
    Matching m2 = sweep(w, w2);
    Matching out;
    out.colour = col;
    out.edges = m1.edges;
    out.edges.insert(out.edges.end(), m2.edges.begin(), m2.edges.end());

    Rational covered(2 * out.size());
    Rational needed = Rational(static_cast<std::int64_t>(a.size() + b.size() + c.size())) -
                      Rational(4) * eta * Rational(g.n_scale()) - Rational(1);
    if (covered < needed)
        throw Error("ConstructionFailed", "near-perfect matching misses its covering bound");
    return out;
}

namespace {

std::optional<int> component_of_vertices(const TripartiteGraph& g, Colour c,
                                         const std::vector<int>& vs) {
    if (vs.empty()) return -1;
    auto comps = colour_components(g, c);
    for (const auto& comp : comps) {
        Bitset in = to_bitset(g.num_vertices(), comp.vertices);
        bool any = false, all = true;
        for (int v : vs) {
            if (in.test(v))
                any = true;
            else
                all = false;
        }
        if (any) return all ? std::optional<int>(comp.id) : std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

std::vector<std::string> validate_matching(const TripartiteGraph& g, const Matching& m,
                                           bool require_connected, bool require_odd_component) {
    std::vector<std::string> bad;
    std::set<int> seen;
    for (auto [u, v] : m.edges) {
        if (g.edge_colour(u, v) != m.colour)
            bad.push_back("edge (" + std::to_string(u) + "," + std::to_string(v) +
                          ") is not of the matching colour");
        if (!seen.insert(u).second || !seen.insert(v).second)
            bad.push_back("vertex reused at edge (" + std::to_string(u) + "," +
                          std::to_string(v) + ")");
    }
    if (require_connected && !m.edges.empty()) {
        auto id = component_of_vertices(g, m.colour, m.covered());
        if (!id)
            bad.push_back("covered vertices span several colour components");
        else if (require_odd_component) {
            auto comps = colour_components(g, m.colour);
            if (!comps[static_cast<std::size_t>(*id)].is_odd)
                bad.push_back("component is even but an odd one is required");
        }
    }
    return bad;
}

std::vector<std::string> validate_fork_system(const TripartiteGraph& g, const ForkSystem& f,
                                              bool require_connected) {
    std::vector<std::string> bad;
    std::set<int> seen;
    Bitset centers = to_bitset(g.num_vertices(), f.center_side);
    Bitset prongs = to_bitset(g.num_vertices(), f.prong_side);
    if ((centers & prongs).any()) bad.push_back("center and prong sides intersect");
    int declared = 0;
    for (const auto& fk : f.forks) {
        if (fk.prongs.empty() || static_cast<int>(fk.prongs.size()) > f.ratio)
            bad.push_back("fork at " + std::to_string(fk.center) + " has bad prong count");
        if (!centers.test(fk.center))
            bad.push_back("center " + std::to_string(fk.center) + " outside center side");
        if (!seen.insert(fk.center).second)
            bad.push_back("vertex reused: " + std::to_string(fk.center));
        for (int p : fk.prongs) {
            declared++;
            if (!prongs.test(p)) bad.push_back("prong " + std::to_string(p) + " outside prong side");
            if (!seen.insert(p).second) bad.push_back("vertex reused: " + std::to_string(p));
            if (g.edge_colour(fk.center, p) != f.colour)
                bad.push_back("fork edge (" + std::to_string(fk.center) + "," + std::to_string(p) +
                              ") is not of the declared colour");
        }
    }
    if (declared != f.size()) bad.push_back("declared size disagrees with recomputation");
    if (require_connected && !f.forks.empty()) {
        std::vector<int> vs;
        for (const auto& fk : f.forks) {
            vs.push_back(fk.center);
            vs.insert(vs.end(), fk.prongs.begin(), fk.prongs.end());
        }
        if (!component_of_vertices(g, f.colour, vs))
            bad.push_back("fork system spans several colour components");
    }
    return bad;
}

}  // namespace tritree
