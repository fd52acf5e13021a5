#include "tritree/assignment.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "tritree/rng.hpp"

namespace tritree {

WeightTable WeightTable::from_decomposition(const Tree& tree, const TreeDecomposition& d) {
    WeightTable w;
    w.S = d.S;
    w.t1 = tree.t1();
    w.t2 = tree.t2();
    w.rows.reserve(d.shrubs.size());
    for (const auto& s : d.shrubs) {
        int a1 = 0, a2 = 0;
        for (int v : s.vertices) (tree.colour_class(v) == 1 ? a1 : a2)++;
        w.rows.emplace_back(a1, a2);
    }
    // Cut vertices are not rows; the totals below count shrub vertices only.
    int c1 = 0, c2 = 0;
    for (int x : d.cut) (tree.colour_class(x) == 1 ? c1 : c2)++;
    w.t1 -= c1;
    w.t2 -= c2;
    w.validate();
    return w;
}

void WeightTable::validate() const {
    std::int64_t s1 = 0, s2 = 0;
    for (auto [a, b] : rows) {
        if (a + b > S) throw Error("BadWeightTable", "row sum exceeds S");
        s1 += a;
        s2 += b;
    }
    if (s1 != t1 || s2 != t2) throw Error("BadWeightTable", "row sums disagree with totals");
}

std::vector<std::pair<int, int>> assign_to_matching(const WeightTable& w, const Matching& m) {
    if (m.edges.empty()) throw Error("BadArguments", "matching must be non-empty");
    int me = m.size();

    // Round one: rows to edges, lightest edge first.
    std::vector<std::int64_t> edge_load(me, 0);
    std::vector<std::vector<int>> edge_rows(me);
    for (std::size_t i = 0; i < w.rows.size(); ++i) {
        int best = 0;
        for (int e = 1; e < me; ++e)
            if (edge_load[e] < edge_load[best]) best = e;
        edge_load[best] += w.rows[i].first + w.rows[i].second;
        edge_rows[best].push_back(static_cast<int>(i));
    }

    // Round two: within each edge, the heavier class side goes to the
    // currently lighter endpoint.
    std::vector<std::pair<int, int>> phi(w.rows.size());
    Rational cap = Rational(w.t(), 2 * me) + Rational(2) * Rational(w.S);
    for (int e = 0; e < me; ++e) {
        auto [u, v] = m.edges[e];
        std::int64_t load_u = 0, load_v = 0;
        for (int i : edge_rows[e]) {
            auto [a1, a2] = w.rows[i];
            bool u_light = load_u <= load_v;
            int big = std::max(a1, a2), small = std::min(a1, a2);
            int big_to_u = u_light ? big : small;
            // Keep class-1 weight on whichever endpoint receives the bigger part.
            if ((a1 >= a2) == u_light)
                phi[i] = {u, v};
            else
                phi[i] = {v, u};
            load_u += big_to_u;
            load_v += (a1 + a2) - big_to_u;
        }
        if (Rational(load_u) > cap || Rational(load_v) > cap)
            throw Error("LoadBoundViolated", "matching assignment exceeds t/(2|M|) + 2S");
    }
    return phi;
}

namespace {

/// Both lemma inequalities, exact: load <= base/f + sqrt(12*t*S*f), i.e.
/// (load*f - base)^2 <= 12*t*S*f^3 when the left side is positive.
bool fork_load_ok(std::int64_t load, std::int64_t base, std::int64_t f, std::int64_t t,
                  std::int64_t S) {
    __int128 lhs = static_cast<__int128>(load) * f - base;
    if (lhs <= 0) return true;
    return lhs * lhs <= static_cast<__int128>(12) * t * S * f * f * f;
}

}  // namespace

std::optional<ForkAssignment> assign_to_forks(const WeightTable& w, const ForkSystem& f,
                                              int retries, std::uint64_t seed) {
    if (w.S > w.t()) throw Error("BadArguments", "needs S <= t");
    std::vector<int> prongs;
    std::map<int, int> center_of;
    for (const auto& fk : f.forks)
        for (int p : fk.prongs) {
            prongs.push_back(p);
            center_of[p] = fk.center;
        }
    std::sort(prongs.begin(), prongs.end());
    if (prongs.empty()) throw Error("BadArguments", "fork system has no prongs");
    if (w.t2 > 0 && f.forks.empty())
        throw Error("BadArguments", "class-2 weight with no centers");
    std::int64_t fsz = static_cast<std::int64_t>(prongs.size());

    // Grouping: consecutive rows accumulate until the group weighs >= S/2
    // (at most one light group at the end).
    std::vector<std::pair<int, int>> groups;
    std::vector<int> group_of(w.rows.size());
    int ga = 0, gb = 0;
    for (std::size_t i = 0; i < w.rows.size(); ++i) {
        ga += w.rows[i].first;
        gb += w.rows[i].second;
        group_of[i] = static_cast<int>(groups.size());
        if (2 * (ga + gb) >= w.S || i + 1 == w.rows.size()) {
            groups.emplace_back(ga, gb);
            ga = gb = 0;
        }
    }

    Rng rng(seed);
    for (int attempt = 1; attempt <= retries; ++attempt) {
        std::vector<int> pick(groups.size());
        for (std::size_t gi = 0; gi < groups.size(); ++gi)
            pick[gi] = prongs[rng.bounded(prongs.size())];

        std::map<int, std::int64_t> load1, load2;
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
            load1[pick[gi]] += groups[gi].first;
            load2[center_of[pick[gi]]] += groups[gi].second;
        }
        bool ok = true;
        for (auto [v, load] : load1)
            ok = ok && fork_load_ok(load, w.t1, fsz, w.t(), w.S);
        for (auto [v, load] : load2)
            ok = ok && fork_load_ok(load, static_cast<std::int64_t>(f.ratio) * w.t2, fsz, w.t(), w.S);
        if (!ok) continue;

        ForkAssignment out;
        out.attempts = attempt;
        out.phi.resize(w.rows.size());
        for (std::size_t i = 0; i < w.rows.size(); ++i) {
            int p = pick[group_of[i]];
            out.phi[i] = {p, center_of[p]};
        }
        return out;
    }
    return std::nullopt;
}

WalkPair walk_parity(const TripartiteGraph& reduced, Colour c, int u, int v) {
    int k = reduced.num_vertices();
    // BFS over (vertex, parity).
    std::vector<std::array<int, 2>> dist(k, {-1, -1});
    std::vector<std::array<int, 2>> from(k, {-1, -1});
    std::queue<std::pair<int, int>> q;
    dist[u][0] = 0;
    q.push({u, 0});
    while (!q.empty()) {
        auto [x, p] = q.front();
        q.pop();
        const Bitset& nb = reduced.neighbours(x, c);
        for (auto z = nb.find_first(); z != Bitset::npos; z = nb.find_next(z)) {
            int y = static_cast<int>(z);
            if (dist[y][p ^ 1] == -1) {
                dist[y][p ^ 1] = dist[x][p] + 1;
                from[y][p ^ 1] = x;
                q.push({y, p ^ 1});
            }
        }
    }
    auto reconstruct = [&](int parity) -> std::optional<std::vector<int>> {
        if (dist[v][parity] == -1) return std::nullopt;
        std::vector<int> walk;
        int x = v, p = parity;
        while (!(x == u && p == 0)) {
            walk.push_back(x);
            int px = from[x][p];
            p ^= 1;
            x = px;
        }
        walk.push_back(u);
        std::reverse(walk.begin(), walk.end());
        return walk;
    };
    WalkPair out;
    out.even = reconstruct(0);
    out.odd = reconstruct(1);
    if (out.even && static_cast<int>(out.even->size()) - 1 > 2 * k)
        throw Error("Internal", "even walk longer than 2k");
    if (out.odd && static_cast<int>(out.odd->size()) - 1 > 2 * k)
        throw Error("Internal", "odd walk longer than 2k");
    // A zero-length even walk is the trivial one.
    return out;
}

RepairResult repair_homomorphism(const Tree& t, const TreeDecomposition& d,
                                 const std::vector<int>& psi, const TripartiteGraph& reduced,
                                 Colour c) {
    RepairResult res;
    res.h.assign(t.order(), -1);
    if (d.cut.empty()) {
        res.h = psi;
        for (int v = 0; v < t.order(); ++v)
            if (res.h[v] < 0) throw Error("BadArguments", "psi must be total when the cut is empty");
        return res;
    }

    std::vector<char> in_cut(t.order(), 0);
    for (int x : d.cut) in_cut[x] = 1;
    const std::vector<int>& par = d.oriented_parent;
    int root = d.cut_order.front();

    // Children under the processing orientation.
    std::vector<std::vector<int>> kids(t.order());
    for (int v = 0; v < t.order(); ++v)
        if (par[v] >= 0) kids[par[v]].push_back(v);

    // First shrub of the root; its root x1 anchors the whole construction.
    int x1 = -1;
    for (const auto& s : d.shrubs)
        if (s.parent_cut == root) {
            x1 = s.root;
            break;
        }
    if (x1 == -1) throw Error("Internal", "root cut vertex has no child shrub");

    // Splices a shrub below its freshly assigned root value h[y] using a
    // minimal even walk towards psi[y].
    auto splice = [&](int y, int reported_cut) {
        const Shrub& s = d.shrubs[d.shrub_of[y]];
        if (res.h[y] == psi[y]) {
            for (int z : s.vertices) res.h[z] = psi[z];
            res.h[y] = psi[y];
            return;
        }
        WalkPair walks = walk_parity(reduced, c, res.h[y], psi[y]);
        if (!walks.even)
            throw Error("WalkConditionViolated",
                        "no even walk for pair (" + std::to_string(reported_cut) + "," +
                            std::to_string(y) + ")");
        const std::vector<int>& walk = *walks.even;
        int m = static_cast<int>(walk.size()) - 1;
        // Distances from y inside the shrub.
        std::map<int, int> dist;
        std::queue<int> q;
        dist[y] = 0;
        q.push(y);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : t.neighbours(u))
                if (d.shrub_of[w] == d.shrub_of[y] && !dist.count(w)) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
        }
        for (int z : s.vertices) {
            int j = dist.at(z);
            res.h[z] = j <= m ? walk[j] : psi[z];
        }
    };

    for (int x : d.cut_order) {
        int child_value;
        if (x == root) {
            Bitset nb = reduced.neighbours(psi[x1], c);
            auto z = nb.find_first();
            if (z == Bitset::npos)
                throw Error("WalkConditionViolated", "psi image of the anchor shrub is isolated");
            res.h[x] = static_cast<int>(z);
            child_value = psi[x1];
        } else if (par[x] == root) {
            res.h[x] = psi[x1];
            child_value = res.h[root];
        } else {
            int z = par[x], zp = par[z];
            if (zp < 0 || res.h[z] < 0 || res.h[zp] < 0)
                throw Error("Internal", "cut vertex processed before its ancestors");
            res.h[x] = res.h[zp];
            child_value = res.h[z];
        }
        for (int y : kids[x])
            if (!in_cut[y]) {
                res.h[y] = child_value;
                splice(y, x);
            }
    }

    for (int v = 0; v < t.order(); ++v)
        if (res.h[v] < 0) throw Error("Internal", "repair left a vertex unassigned");

    // Change count: cut vertices plus shrub vertices moved off psi.
    res.changed = static_cast<std::int64_t>(d.cut.size());
    for (int v = 0; v < t.order(); ++v)
        if (!in_cut[v] && res.h[v] != psi[v]) ++res.changed;

    // The walk-splice bound 3|C|*Delta^(2k+1); saturating power.
    __int128 bound = 3 * static_cast<__int128>(d.cut.size());
    __int128 pw = 1;
    bool huge = false;
    for (int i = 0; i < 2 * reduced.num_vertices() + 1 && !huge; ++i) {
        pw *= std::max(1, t.max_degree());
        if (pw > static_cast<__int128>(1) << 100) huge = true;
    }
    if (!huge && static_cast<__int128>(res.changed) > bound * pw)
        throw Error("Internal", "changed-vertex bound violated");

    // Homomorphism and two-cluster-neighbourhood checks.
    for (int v = 1; v < t.order(); ++v) {
        int u = t.parent(v);
        if (reduced.edge_colour(res.h[u], res.h[v]) != c)
            throw Error("Internal", "repair produced a non-edge image");
    }
    for (int v = 0; v < t.order(); ++v) {
        std::set<int> imgs;
        for (int u : t.neighbours(v)) imgs.insert(res.h[u]);
        if (imgs.size() > 2) throw Error("Internal", "neighbourhood image exceeds two clusters");
    }
    return res;
}

std::vector<std::string> check_valid(const Tree& t, const std::vector<int>& h,
                                     const TripartiteGraph& reduced, Colour c,
                                     const Rational& rho, const Rational& L) {
    std::vector<std::string> bad;
    if (static_cast<int>(h.size()) != t.order()) {
        bad.push_back("assignment size differs from tree order");
        return bad;
    }
    for (auto [u, v] : t.edge_list())
        if (h[u] < 0 || h[v] < 0 || reduced.edge_colour(h[u], h[v]) != c) {
            bad.push_back("not a homomorphism at edge (" + std::to_string(u) + "," +
                          std::to_string(v) + ")");
            break;
        }
    for (int v = 0; v < t.order(); ++v) {
        std::set<int> imgs;
        for (int u : t.neighbours(v)) imgs.insert(h[u]);
        if (imgs.size() > 2) {
            bad.push_back("neighbourhood image of " + std::to_string(v) + " spans " +
                          std::to_string(imgs.size()) + " clusters");
            break;
        }
    }
    std::vector<std::int64_t> loads(reduced.num_vertices(), 0);
    for (int v = 0; v < t.order(); ++v)
        if (h[v] >= 0 && h[v] < reduced.num_vertices()) ++loads[h[v]];
    Rational cap = (Rational(1) - rho) * L;
    for (int i = 0; i < reduced.num_vertices(); ++i)
        if (!(Rational(loads[i]) < cap))
            bad.push_back("cluster " + std::to_string(i) + " holds " + std::to_string(loads[i]) +
                          " >= (1-rho)L = " + cap.str());
    return bad;
}

namespace {

/// A matching viewed as a 1-fork system, sides aligned with the component
/// bipartition when it exists.
ForkSystem matching_as_forks(const TripartiteGraph& reduced, const Matching& m) {
    ForkSystem f;
    f.colour = m.colour;
    f.ratio = 1;
    // Two-colour the matching's component in its colour subgraph.
    std::map<int, int> side;
    std::vector<int> stack{m.edges.front().first};
    side[m.edges.front().first] = 0;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        const Bitset& nb = reduced.neighbours(u, m.colour);
        for (auto z = nb.find_first(); z != Bitset::npos; z = nb.find_next(z)) {
            int v = static_cast<int>(z);
            if (!side.count(v)) {
                side[v] = side[u] ^ 1;
                stack.push_back(v);
            }
        }
    }
    for (auto [u, v] : m.edges) {
        int prong = side.count(u) && side[u] == 0 ? u : v;
        int center = prong == u ? v : u;
        f.forks.push_back({center, {prong}});
        f.prong_side.push_back(prong);
        f.center_side.push_back(center);
    }
    return f;
}

}  // namespace

ValidAssignment build_valid_assignment(const Tree& tree, const TripartiteGraph& reduced,
                                       const Certificate& cert, const AssignmentParams& params) {
    if (!(params.host_ratio > Rational(0)))
        throw Error("BadArguments", "host_ratio (n/k) must be positive");
    if (!(params.eps < params.mu * Rational(1, 10)))
        throw Error("Precondition", "needs eps < mu/10");
    const Rational& nk = params.host_ratio;
    Colour colour = cert.colour();
    std::int64_t t = tree.order();

    int S = params.S_override.value_or(
        std::max<std::int64_t>(1, (params.eps * nk).floor()));

    ValidAssignment out;
    out.decomposition = s_cut(tree, S);
    WeightTable w = WeightTable::from_decomposition(tree, out.decomposition);

    // Route selection: odd matchings take the matching route; good pairs use
    // the fork system for unbalanced trees (t2 <= t/3) and the matching as a
    // 1-fork system otherwise.
    std::vector<std::pair<int, int>> phi;
    bool matching_route = cert.kind == Certificate::Kind::OddMatching;
    if (matching_route) {
        std::int64_t m = cert.matching.size();
        if (Rational(t) > (Rational(1) - params.mu) * Rational(2 * m) * nk)
            throw Error("Precondition", "tree order exceeds (1-mu)*2m*n/k");
        phi = assign_to_matching(w, cert.matching);
    } else {
        ForkSystem forks;
        if (3 * tree.t2() <= t) {
            if (!cert.forks) throw Error("BadArguments", "good pair lacks a fork system");
            forks = *cert.forks;
        } else {
            forks = matching_as_forks(reduced, cert.matching);
        }
        std::int64_t f = forks.size();
        Rational tprime = (Rational(1) - params.mu) * Rational(f) * nk;
        if (Rational(tree.t1()) > tprime)
            throw Error("Precondition", "t1 exceeds (1-mu)*f*n/k");
        if (Rational(tree.t2()) * Rational(forks.ratio) > tprime)
            throw Error("Precondition", "t2 exceeds (1-mu)*f*n/k / r");
        auto fa = assign_to_forks(w, forks, params.fork_retries, params.seed);
        if (!fa) throw Error("ForkAssignmentFailure", "retry budget exhausted");
        phi = std::move(fa->phi);
        out.used_fork_route = true;
    }

    // psi: shrub vertices to their class's end of the assigned edge.
    out.psi.assign(tree.order(), -1);
    for (std::size_t i = 0; i < out.decomposition.shrubs.size(); ++i)
        for (int v : out.decomposition.shrubs[i].vertices)
            out.psi[v] = tree.colour_class(v) == 1 ? phi[i].first : phi[i].second;

    RepairResult rep = repair_homomorphism(tree, out.decomposition, out.psi, reduced, colour);
    out.changed = rep.changed;

    out.assignment.h = std::move(rep.h);
    out.assignment.rho = params.mu * Rational(1, 2);
    out.assignment.L = (Rational(1) - params.eps) * nk;
    out.assignment.loads.assign(reduced.num_vertices(), 0);
    for (int img : out.assignment.h) ++out.assignment.loads[img];

    auto bad = check_valid(tree, out.assignment.h, reduced, colour, out.assignment.rho,
                           out.assignment.L);
    if (!bad.empty()) throw Error("CapacityExceeded", bad.front());
    return out;
}

}  // namespace tritree
