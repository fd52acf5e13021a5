#include "tritree/regularity.hpp"

#include <algorithm>
#include <cmath>

#include "tritree/rng.hpp"

namespace tritree {

Partition equipartition(const TripartiteGraph& host, int k, std::uint64_t seed) {
    if (k < 3 || k % 3 != 0) throw Error("BadArguments", "k must be a positive multiple of 3");
    int per_class = k / 3;
    Rng rng(seed);
    Partition p;
    int L = INT32_MAX;
    for (int cls = 0; cls < 3; ++cls) {
        int sz = host.class_sizes()[cls];
        if (sz < per_class) throw Error("TooFewVertices", "class smaller than k/3");
        L = std::min(L, sz / per_class);
    }
    p.L = L;
    for (int cls = 0; cls < 3; ++cls) {
        std::vector<int> vs = host.class_vertices(cls);
        rng.shuffle(vs);
        for (int i = 0; i < per_class; ++i) {
            std::vector<int> cl(vs.begin() + i * L, vs.begin() + (i + 1) * L);
            std::sort(cl.begin(), cl.end());
            p.clusters.push_back(std::move(cl));
            p.class_of.push_back(cls);
        }
        p.bin.insert(p.bin.end(), vs.begin() + per_class * L, vs.end());
    }
    std::sort(p.bin.begin(), p.bin.end());
    return p;
}

namespace {

Rational subset_density(const TripartiteGraph& g, std::optional<Colour> c,
                        const std::vector<int>& u, const Bitset& wb, std::int64_t wsize) {
    std::int64_t edges = 0;
    for (int x : u) {
        Bitset nb = c ? (g.neighbours(x, *c) & wb)
                      : ((g.neighbours(x, Colour::Green) | g.neighbours(x, Colour::Red)) & wb);
        edges += static_cast<std::int64_t>(nb.count());
    }
    return {edges, static_cast<std::int64_t>(u.size()) * wsize};
}

std::vector<int> sample_subset(const std::vector<int>& from, int count, Rng& rng) {
    std::vector<int> idx(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) idx[i] = static_cast<int>(i);
    // Partial Fisher-Yates: the first `count` entries are the sample.
    for (int i = 0; i < count; ++i) {
        int j = i + static_cast<int>(rng.bounded(idx.size() - i));
        std::swap(idx[i], idx[j]);
    }
    std::vector<int> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(from[idx[i]]);
    return out;
}

}  // namespace

PairAudit audit_pair(const TripartiteGraph& host, std::optional<Colour> colour,
                     const std::vector<int>& vi, const std::vector<int>& vj, const Rational& eps,
                     const Rational& d, int num_samples, std::uint64_t seed) {
    PairAudit a;
    int L = static_cast<int>(std::min(vi.size(), vj.size()));
    int sub = static_cast<int>((eps * Rational(L)).ceil());
    sub = std::max(1, std::min(sub, L));

    Bitset vjb = to_bitset(host.num_vertices(), vj);
    Bitset vib = to_bitset(host.num_vertices(), vi);
    a.density_all = subset_density(host, std::nullopt, vi, vjb, vj.size());
    a.density_green = subset_density(host, Colour::Green, vi, vjb, vj.size());
    a.density_red = subset_density(host, Colour::Red, vi, vjb, vj.size());
    Rational base = colour ? subset_density(host, colour, vi, vjb, vj.size()) : a.density_all;

    if (base < d) {
        a.pass = false;
        a.reason = "density below d";
        return a;
    }

    Rng rng(seed);
    for (int s = 0; s < num_samples; ++s) {
        std::vector<int> su = sample_subset(vi, sub, rng);
        std::vector<int> sw = sample_subset(vj, sub, rng);
        Bitset swb = to_bitset(host.num_vertices(), sw);
        Rational dd = subset_density(host, colour, su, swb, sw.size());
        Rational dev = dd > base ? dd - base : base - dd;
        if (dev > a.sampled_deviation) a.sampled_deviation = dev;
        if (dev > eps) {
            a.pass = false;
            a.reason = "sampled deviation exceeds eps";
            a.fail_witness = {std::move(su), std::move(sw)};
            return a;
        }
    }

    // Typicality: vertices of Vj with fewer than (d-eps)|X| neighbours in a
    // sampled X from Vi; a regular pair leaves fewer than eps|Vj| of them.
    std::vector<int> x = sample_subset(vi, sub, rng);
    Bitset xb = to_bitset(host.num_vertices(), x);
    Rational need = (d - eps) * Rational(static_cast<std::int64_t>(x.size()));
    for (int v : vj) {
        Bitset nb = colour ? (host.neighbours(v, *colour) & xb)
                           : ((host.neighbours(v, Colour::Green) | host.neighbours(v, Colour::Red)) & xb);
        if (Rational(static_cast<std::int64_t>(nb.count())) < need) ++a.non_typical;
    }
    if (Rational(a.non_typical) >= eps * Rational(static_cast<std::int64_t>(vj.size())) &&
        a.non_typical > 0) {
        a.pass = false;
        a.reason = "too many non-typical vertices";
        return a;
    }

    a.pass = true;
    return a;
}

ReducedHost reduced_colour_graph(const TripartiteGraph& host, const Partition& p,
                                 const Rational& eps, const Rational& d, int num_samples,
                                 std::uint64_t seed, const Rational& eta_check) {
    int k = static_cast<int>(p.clusters.size());
    Rng rng(seed);
    std::vector<std::vector<std::optional<Colour>>> colour(k, std::vector<std::optional<Colour>>(k));
    std::vector<int> fails(k, 0);
    std::vector<PairAudit> audits;

    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            if (p.class_of[i] == p.class_of[j]) continue;
            PairAudit a = audit_pair(host, std::nullopt, p.clusters[i], p.clusters[j], eps, d,
                                     num_samples, rng.next());
            a.i = i;
            a.j = j;
            if (a.pass) {
                colour[i][j] = colour[j][i] =
                    a.density_green >= Rational(1, 2) ? Colour::Green : Colour::Red;
            } else {
                ++fails[i];
                ++fails[j];
            }
            audits.push_back(std::move(a));
        }

    // Clusters with too many failed audits go to the bin; drop extra clusters
    // to keep the classes balanced (lowest failure count survives).
    double limit = std::sqrt(eps.to_double()) * k;
    std::array<std::vector<int>, 3> keep;
    for (int i = 0; i < k; ++i)
        if (fails[i] <= limit) keep[p.class_of[i]].push_back(i);
    std::size_t per_class = std::min({keep[0].size(), keep[1].size(), keep[2].size()});
    if (per_class == 0) throw Error("TooManyIrregularPairs", "no balanced survivor set");
    for (auto& ks : keep) {
        std::stable_sort(ks.begin(), ks.end(), [&](int a, int b) { return fails[a] < fails[b]; });
        ks.resize(per_class);
        std::sort(ks.begin(), ks.end());
    }

    ReducedHost out;
    out.audits = std::move(audits);
    std::vector<int> new_id(k, -1);
    for (int cls = 0; cls < 3; ++cls)
        for (int i : keep[cls]) {
            new_id[i] = static_cast<int>(out.source_cluster.size());
            out.source_cluster.push_back(i);
            out.partition.clusters.push_back(p.clusters[i]);
            out.partition.class_of.push_back(cls);
        }
    out.partition.L = p.L;
    out.partition.bin = p.bin;
    for (int i = 0; i < k; ++i)
        if (new_id[i] == -1)
            out.partition.bin.insert(out.partition.bin.end(), p.clusters[i].begin(),
                                     p.clusters[i].end());
    std::sort(out.partition.bin.begin(), out.partition.bin.end());

    std::vector<ColouredEdge> redges;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (new_id[i] >= 0 && new_id[j] >= 0 && colour[i][j])
                redges.push_back({new_id[i], new_id[j], *colour[i][j]});
    int pc = static_cast<int>(per_class);
    out.reduced = TripartiteGraph::build({pc, pc, pc}, redges);

    if (!in_class_K_eta(out.reduced, eta_check))
        throw Error("TooManyIrregularPairs", "surviving reduced graph leaves K_eta");
    return out;
}

}  // namespace tritree
