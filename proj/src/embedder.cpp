#include "tritree/embedder.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace tritree {

std::vector<int> typical_vertices(const TripartiteGraph& host, Colour c,
                                  const std::vector<int>& pool, const std::vector<int>& x,
                                  const Rational& d, const Rational& eps, int cluster_size) {
    if (Rational(static_cast<std::int64_t>(x.size())) < eps * Rational(cluster_size))
        throw Error("TargetTooSmall", "typicality target below eps*L");
    Bitset xb = to_bitset(host.num_vertices(), x);
    Rational need = (d - eps) * Rational(static_cast<std::int64_t>(x.size()));
    std::vector<int> out;
    for (int v : pool)
        if (Rational(static_cast<std::int64_t>((host.neighbours(v, c) & xb).count())) >= need)
            out.push_back(v);
    return out;
}

namespace {

struct PendingSet {
    Bitset candidates;   // current candidate set (used vertices never removed lazily)
    bool explicit_set = false;
};

}  // namespace

Embedding embed(const Tree& tree, const TreeDecomposition& decomp,
                const ClusterAssignment& assignment, const TripartiteGraph& host,
                const Partition& partition, Colour colour, const EmbedParams& params) {
    const int n_host = host.num_vertices();
    const int k = static_cast<int>(partition.clusters.size());
    const int L = partition.L;
    const std::vector<int>& h = assignment.h;
    if (static_cast<int>(h.size()) != tree.order())
        throw Error("BadArguments", "assignment does not cover the tree");
    if (tree.max_degree() > params.delta && params.delta > 0)
        throw Error("Precondition", "tree degree exceeds the declared Delta");
    int delta = params.delta > 0 ? params.delta : tree.max_degree();

    // Validity of the assignment is a precondition, re-checked here.
    {
        // Reduced adjacency is not available; check loads and the cluster range only.
        std::vector<int> loads(k, 0);
        for (int img : h) {
            if (img < 0 || img >= k) throw Error("BadArguments", "assignment image out of range");
            ++loads[img];
        }
        Rational cap = (Rational(1) - assignment.rho) * assignment.L;
        for (int i = 0; i < k; ++i)
            if (!(Rational(loads[i]) < cap))
                throw Error("Precondition", "assignment overloads cluster " + std::to_string(i));
    }

    // Embedding space: the first (1-rho/2)L vertices of each cluster.
    // Connecting space: the rest.
    std::vector<Bitset> embed_space(k, Bitset(n_host)), connect_space(k, Bitset(n_host));
    {
        Rational keep = (Rational(1) - assignment.rho * Rational(1, 2)) * Rational(L);
        int keep_i = static_cast<int>(keep.ceil());
        for (int i = 0; i < k; ++i) {
            const auto& cl = partition.clusters[i];
            for (std::size_t j = 0; j < cl.size(); ++j)
                (static_cast<int>(j) < keep_i ? embed_space[i] : connect_space[i]).set(cl[j]);
        }
        // Feasibility of the split: connecting space must hold every cut vertex.
        for (int i = 0; i < k; ++i) {
            int cut_here = 0;
            for (int x : decomp.cut)
                if (h[x] == i) ++cut_here;
            if (static_cast<std::size_t>(cut_here) > connect_space[i].count())
                throw Error("Precondition",
                            "connecting space of cluster " + std::to_string(i) + " below |C|");
        }
    }

    int reservoir_size = static_cast<int>((Rational(5) * params.eps * Rational(L)).ceil()) + delta;

    Bitset used(n_host);
    std::vector<PendingSet> pending(tree.order());
    std::vector<char> in_cut(tree.order(), 0);
    for (int x : decomp.cut) in_cut[x] = 1;

    // Active reservoirs: cluster -> reserved set; holders keep access.
    std::map<int, Bitset> reservoirs;
    std::set<int> reservoir_holders;  // tree vertices whose candidate set IS a reservoir

    Embedding emb;
    emb.colour = colour;
    emb.f.assign(tree.order(), -1);

    auto default_candidates = [&](int y) {
        Bitset b = in_cut[y] ? connect_space[h[y]] : embed_space[h[y]];
        if (!in_cut[y] && !reservoir_holders.count(y)) {
            auto it = reservoirs.find(h[y]);
            if (it != reservoirs.end()) b &= ~it->second;
        }
        return b;
    };
    auto candidates_of = [&](int y) {
        return pending[y].explicit_set ? pending[y].candidates : default_candidates(y);
    };

    auto restore_reservoirs = [&]() {
        for (auto& [i, r] : reservoirs) {
            // Put reserved vertices back into explicit sets over V'_i, gated by
            // the owner's adjacency constraint already burned into the set.
            for (int y = 0; y < tree.order(); ++y) {
                if (!pending[y].explicit_set || in_cut[y] || h[y] != i) continue;
                if (reservoir_holders.count(y) || emb.f[y] != -1) continue;
                // A pending explicit set was shrunk exactly once, by the
                // oriented parent's image; re-admit reserved vertices through
                // the same adjacency gate.
                int anchor = decomp.oriented_parent[y];
                if (anchor >= 0 && emb.f[anchor] >= 0)
                    pending[y].candidates |= r & host.neighbours(emb.f[anchor], colour) & ~used;
            }
        }
        reservoirs.clear();
        reservoir_holders.clear();
    };

    auto dump_state = [&](int x, const Bitset& cand, const std::string& why) {
        std::ostringstream os;
        os << "{\"vertex\":" << x << ",\"cluster\":" << h[x] << ",\"candidates\":" << cand.count()
           << ",\"used\":" << used.count() << ",\"reason\":\"" << why << "\"}";
        return os.str();
    };

    Rational four_eps_l = Rational(4) * params.eps * Rational(L);

    for (int x : decomp.order) {
        // Step 5: restoration happens when we move past a cut vertex's last
        // child shrub, i.e. when the next cut vertex arrives.
        if (in_cut[x]) restore_reservoirs();

        Bitset cand = candidates_of(x);
        cand &= ~used;

        if (params.instrumented && Rational(static_cast<std::int64_t>(cand.count())) <= four_eps_l)
            throw EmbedError("candidate set at or below 4*eps*L",
                             dump_state(x, cand, "candidate floor"));

        // Unembedded neighbours grouped by (cluster, cut-status): at most four
        // distinct candidate-set types by the valid-assignment property.
        std::vector<std::pair<Bitset, std::size_t>> targets;
        {
            std::map<std::pair<int, int>, Bitset> groups;
            std::set<int> clusters_seen;
            for (int y : tree.neighbours(x)) {
                if (emb.f[y] != -1) continue;
                Bitset yb = candidates_of(y);
                yb &= ~used;
                clusters_seen.insert(h[y]);
                groups.try_emplace(std::make_pair(h[y], static_cast<int>(in_cut[y])),
                                   std::move(yb));
            }
            if (clusters_seen.size() > 2)
                throw Error("Internal", "more than two pending neighbour clusters");
            for (auto& [key, b] : groups) targets.emplace_back(b, b.count());
        }

        Rational dmeps = params.d - params.eps;
        int image = -1;
        for (auto v = cand.find_first(); v != Bitset::npos; v = cand.find_next(v)) {
            bool ok = true;
            for (auto& [tb, tsz] : targets) {
                if (tsz == 0) {
                    ok = false;
                    break;
                }
                auto have = (host.neighbours(static_cast<int>(v), colour) & tb).count();
                if (Rational(static_cast<std::int64_t>(have)) <
                    dmeps * Rational(static_cast<std::int64_t>(tsz))) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                image = static_cast<int>(v);
                break;
            }
        }
        if (image == -1)
            throw EmbedError("no typical image for tree vertex " + std::to_string(x),
                             dump_state(x, cand, "typicality"));

        emb.f[x] = image;
        used.set(image);

        // Step 3: shrink the pending neighbours' sets to the new neighbourhood.
        const Bitset& nb = host.neighbours(image, colour);
        for (int y : tree.neighbours(x)) {
            if (emb.f[y] != -1) continue;
            Bitset yb = candidates_of(y);
            yb &= nb;
            yb &= ~used;
            pending[y].candidates = std::move(yb);
            pending[y].explicit_set = true;
        }

        // Step 4: carve reservoirs for the cut vertex's non-cut children.
        if (in_cut[x]) {
            std::map<int, std::vector<int>> children_by_cluster;
            for (int y : tree.neighbours(x))
                if (emb.f[y] == -1 && !in_cut[y]) children_by_cluster[h[y]].push_back(y);
            for (auto& [i, ys] : children_by_cluster) {
                Bitset pool = embed_space[i] & nb & ~used;
                Bitset r(n_host);
                int got = 0;
                for (auto v = pool.find_first(); v != Bitset::npos && got < reservoir_size;
                     v = pool.find_next(v), ++got)
                    r.set(v);
                if (got < reservoir_size)
                    throw EmbedError("cannot carve a reservoir in cluster " + std::to_string(i),
                                     dump_state(x, pool, "reservoir"));
                for (int y : ys) {
                    pending[y].candidates = r;
                    pending[y].explicit_set = true;
                    reservoir_holders.insert(y);
                }
                // Remove the reserved vertices from every other explicit set.
                for (int y = 0; y < tree.order(); ++y)
                    if (pending[y].explicit_set && !reservoir_holders.count(y) && h[y] == i &&
                        emb.f[y] == -1)
                        pending[y].candidates &= ~r;
                reservoirs[i] = std::move(r);
            }
            if (reservoirs.size() > 2)
                throw Error("Internal", "more than two active reservoirs");
        }
    }
    restore_reservoirs();

    auto bad = verify_embedding(tree, emb, host, assignment.h, &partition);
    if (!bad.empty()) throw Error("Internal", "embedding failed verification: " + bad.front());
    return emb;
}

std::vector<std::string> verify_embedding(const Tree& tree, const Embedding& emb,
                                          const TripartiteGraph& host,
                                          const std::optional<std::vector<int>>& h,
                                          const Partition* partition) {
    std::vector<std::string> bad;
    if (static_cast<int>(emb.f.size()) != tree.order()) {
        bad.push_back("embedding does not cover the tree");
        return bad;
    }
    std::set<int> images;
    for (int v = 0; v < tree.order(); ++v) {
        int img = emb.f[v];
        if (img < 0 || img >= host.num_vertices()) {
            bad.push_back("image of " + std::to_string(v) + " out of range");
            return bad;
        }
        if (!images.insert(img).second) bad.push_back("not injective at host vertex " + std::to_string(img));
    }
    for (auto [u, v] : tree.edge_list())
        if (host.edge_colour(emb.f[u], emb.f[v]) != emb.colour) {
            bad.push_back("tree edge (" + std::to_string(u) + "," + std::to_string(v) +
                          ") maps to a non-" + name(emb.colour) + " pair");
            break;
        }
    if (h && partition) {
        for (int v = 0; v < tree.order(); ++v) {
            const auto& cl = partition->clusters[(*h)[v]];
            if (!std::binary_search(cl.begin(), cl.end(), emb.f[v])) {
                bad.push_back("image of " + std::to_string(v) + " outside its cluster");
                break;
            }
        }
    }
    return bad;
}

}  // namespace tritree
