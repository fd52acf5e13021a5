#include "tritree/extremal.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tritree {

namespace {

Rational frac(std::int64_t num, std::int64_t den) { return {num, den}; }

std::vector<std::pair<int, int>> concat_edges(const Matching& a, const Matching& b) {
    std::vector<std::pair<int, int>> out = a.edges;
    out.insert(out.end(), b.edges.begin(), b.edges.end());
    return out;
}

bool non_negligible_or_empty(const std::vector<int>& s, const Rational& eta, int n) {
    return s.empty() || Rational(static_cast<std::int64_t>(s.size())) >= Rational(2) * eta * Rational(n);
}

void check_pair(std::vector<std::string>& bad, const TripartiteGraph& g, const std::vector<int>& x,
                const std::vector<int>& y, const Rational& eta, std::optional<Colour> c,
                const std::string& label) {
    if (x.empty() || y.empty()) return;
    if (!is_eta_complete(g, x, y, eta, c))
        bad.push_back(label + " is not " + (c ? std::string("(eta,") + name(*c) + ")" : "eta") +
                      "-complete");
}

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

bool pairwise_disjoint(const std::vector<const std::vector<int>*>& sets) {
    std::set<int> seen;
    for (const auto* s : sets)
        for (int v : *s)
            if (!seen.insert(v).second) return false;
    return true;
}

}  // namespace

std::vector<std::string> validate_witness(const TripartiteGraph& g, const ExtremalWitness& w) {
    std::vector<std::string> bad;
    int n = g.n_scale();

    if (const auto* p = std::get_if<PyramidWitness>(&w)) {
        const Rational& eta = p->eta;
        if (!pairwise_disjoint({&p->d1, &p->d2, &p->d1p, &p->d2p}))
            bad.push_back("pyramid sets are not pairwise disjoint");
        for (const auto* s : {&p->d1, &p->d2, &p->d1p, &p->d2p})
            if (static_cast<int>(s->size()) > n) bad.push_back("a pyramid set exceeds n");
        Rational low = (Rational(1) - eta) * Rational(n);
        if (Rational((std::int64_t)p->d1.size()) < low) bad.push_back("|D1| too small");
        if (Rational((std::int64_t)p->d2.size()) < low) bad.push_back("|D2| too small");
        if (Rational((std::int64_t)(p->d1p.size() + p->d2p.size())) < low)
            bad.push_back("|D1'| + |D2'| too small");
        if (!non_negligible_or_empty(p->d1p, eta, n)) bad.push_back("D1' negligible but non-empty");
        if (!non_negligible_or_empty(p->d2p, eta, n)) bad.push_back("D2' negligible but non-empty");

        check_pair(bad, g, p->d1, p->d1p, eta, p->c, "K[D1,D1']");
        check_pair(bad, g, p->d2, p->d2p, eta, p->c, "K[D2,D2']");
        check_pair(bad, g, p->d1, p->d2p, eta, std::nullopt, "K[D1,D2']");
        check_pair(bad, g, p->d2, p->d1p, eta, std::nullopt, "K[D2,D1']");
        check_pair(bad, g, p->d1, p->d2, eta, std::nullopt, "K[D1,D2]");
        if (p->mode == PyramidMode::Tunnel) {
            check_pair(bad, g, p->d1, p->d2, eta, p->cp, "tunnel K[D1,D2]");
        } else {
            check_pair(bad, g, p->d1, p->d2p, eta, p->cp, "crossing K[D1,D2']");
            check_pair(bad, g, p->d1p, p->d2, eta, p->cp, "crossing K[D1',D2]");
        }
        return bad;
    }

    const auto& s = std::get<SpiderWitness>(w);
    const Rational& eta = s.eta;
    if (!pairwise_disjoint({&s.a1, &s.a2, &s.b1, &s.b2, &s.c1, &s.c2}))
        bad.push_back("spider sets are not pairwise disjoint");
    Rational low = (Rational(1) - eta) * Rational(n);
    if (Rational((std::int64_t)(s.a1.size() + s.a2.size())) < low) bad.push_back("|A1 u A2| too small");
    if (Rational((std::int64_t)(s.b1.size() + s.b2.size())) < low) bad.push_back("|B1 u B2| too small");
    if (Rational((std::int64_t)(s.c1.size() + s.c2.size())) < low) bad.push_back("|C1 u C2| too small");

    // The six class1-class2 pairs, all (eta,c)-complete.
    check_pair(bad, g, s.a1, s.b2, eta, s.c, "K[A1,B2]");
    check_pair(bad, g, s.a1, s.c2, eta, s.c, "K[A1,C2]");
    check_pair(bad, g, s.b1, s.a2, eta, s.c, "K[B1,A2]");
    check_pair(bad, g, s.b1, s.c2, eta, s.c, "K[B1,C2]");
    check_pair(bad, g, s.c1, s.a2, eta, s.c, "K[C1,A2]");
    check_pair(bad, g, s.c1, s.b2, eta, s.c, "K[C1,B2]");

    // Splits of the class-2 sets.
    auto split_ok = [&](const std::vector<int>& whole, std::vector<std::vector<int>> parts,
                        const std::string& label) {
        std::set<int> u;
        std::size_t total = 0;
        for (auto& p : parts) {
            total += p.size();
            for (int v : p) u.insert(v);
        }
        std::set<int> wset(whole.begin(), whole.end());
        if (u != wset || total != whole.size()) bad.push_back(label + " split does not partition");
    };
    split_ok(s.a2, {s.a_b, s.a_c}, "A2");
    split_ok(s.b2, {s.b_a, s.b_c}, "B2");
    split_ok(s.c2, {s.c_a, s.c_b, s.c_c}, "C2");
    for (auto [set, nm] : std::initializer_list<std::pair<const std::vector<int>*, const char*>>{
             {&s.a_b, "A_B"}, {&s.a_c, "A_C"}, {&s.b_a, "B_A"}, {&s.b_c, "B_C"},
             {&s.c_a, "C_A"}, {&s.c_b, "C_B"}, {&s.c_c, "C_C"}})
        if (!non_negligible_or_empty(*set, eta, n))
            bad.push_back(std::string(nm) + " negligible but non-empty");

    // Condition 1.
    if (!(s.a1.size() >= s.b1.size() &&
          s.b1.size() >= s.c1.size() + s.c_c.size()))
        bad.push_back("condition 1: |A1| >= |B1| >= |C1 u C_C| fails");
    auto cond1_pair = [&](const std::vector<int>& dd, const std::vector<int>& d2d,
                          const std::vector<int>& opp2, const std::string& label) {
        if (dd.size() != d2d.size()) bad.push_back("condition 1: " + label + " sizes differ");
        if (static_cast<std::int64_t>(dd.size()) > n - static_cast<std::int64_t>(opp2.size()))
            bad.push_back("condition 1: " + label + " exceeds n - |D''_2|");
    };
    cond1_pair(s.a_b, s.b_a, s.c2, "|A_B| = |B_A|");
    cond1_pair(s.a_c, s.c_a, s.b2, "|A_C| = |C_A|");
    cond1_pair(s.b_c, s.c_b, s.a2, "|B_C| = |C_B|");

    // Condition 2.
    if (!s.c_c.empty() && !s.a_b.empty())
        bad.push_back("condition 2: both C_C and A_B non-empty");

    // Condition 3.
    if (!s.a2.empty()) {
        std::int64_t mass = static_cast<std::int64_t>(s.a2.size() + s.b2.size() + s.c_a.size() +
                                                      s.c_b.size());
        if (Rational(mass) > (Rational(1) - eta) * frac(3, 2) * Rational(n))
            bad.push_back("condition 3: |A2 u B2 u C_A u C_B| too large");
    }

    // Condition 4.
    if (!s.c1.empty()) {
        Rational ones((std::int64_t)(s.a1.size() + s.b1.size() + s.c1.size()));
        Rational bc((std::int64_t)(s.b1.size() + s.c1.size()));
        bool ok = ones < (Rational(1) - eta) * frac(3, 2) * Rational(n) ||
                  bc <= (Rational(1) - eta) * frac(3, 4) * Rational(n);
        if (!ok) bad.push_back("condition 4 fails");
    }

    // The six pairs together must form a connected bipartite witness.
    {
        std::vector<int> one = concat(concat(s.a1, s.b1), s.c1);
        std::vector<int> two = concat(concat(s.a2, s.b2), s.c2);
        if (!one.empty() && !two.empty()) {
            std::map<int, int> up;
            for (int v : concat(one, two)) up[v] = v;
            auto find = [&](int v) {
                while (up[v] != v) v = up[v] = up[up[v]];
                return v;
            };
            std::vector<std::pair<const std::vector<int>*, std::vector<int>>> pairs;
            pairs.emplace_back(&s.a1, concat(s.b2, s.c2));
            pairs.emplace_back(&s.b1, concat(s.a2, s.c2));
            pairs.emplace_back(&s.c1, concat(s.a2, s.b2));
            for (auto& [xs, ys] : pairs) {
                Bitset yb = to_bitset(g.num_vertices(), ys);
                for (int x : *xs) {
                    Bitset nb = g.neighbours(x, s.c) & yb;
                    for (auto z = nb.find_first(); z != Bitset::npos; z = nb.find_next(z))
                        up[find(x)] = find(static_cast<int>(z));
                }
            }
            std::set<int> roots;
            for (auto& [v, _] : up) roots.insert(find(v));
            if (roots.size() != 1) bad.push_back("witness subgraph K_c is not connected");
        }
    }
    return bad;
}

namespace {

void require_witness(const TripartiteGraph& g, const ExtremalWitness& w, const Rational& eta,
                     const Rational& eta_prime, std::int64_t denom) {
    if (eta * Rational(denom) > eta_prime)
        throw Error("HypothesisViolated", "witness eta exceeds eta'/" + std::to_string(denom));
    auto bad = validate_witness(g, w);
    if (!bad.empty()) throw Error("HypothesisViolated", "witness invalid: " + bad.front());
}

/// Greedy sweep from x into y preferring earlier target groups.
Matching greedy_preferring(const TripartiteGraph& g, Colour c, const std::vector<int>& x,
                           const std::vector<std::vector<int>>& target_groups) {
    Matching m;
    m.colour = c;
    std::vector<Bitset> avail;
    for (const auto& t : target_groups) avail.push_back(to_bitset(g.num_vertices(), t));
    for (int v : x) {
        for (auto& a : avail) {
            Bitset cand = g.neighbours(v, c) & a;
            auto w = cand.find_first();
            if (w != Bitset::npos) {
                a.reset(w);
                m.edges.emplace_back(v, static_cast<int>(w));
                break;
            }
        }
    }
    return m;
}

std::vector<int> minus(const std::vector<int>& a, const std::vector<int>& used) {
    std::set<int> u(used.begin(), used.end());
    std::vector<int> out;
    for (int v : a)
        if (!u.count(v)) out.push_back(v);
    return out;
}

ForkSystem forks_from_matchings(Colour c, const std::vector<const Matching*>& parts,
                                const std::vector<int>& center_side,
                                const std::vector<int>& prong_side, int ratio) {
    // Fork center = the edge end lying in center_side.
    Bitset centers;
    std::map<int, Fork> by_center;
    std::set<int> cs(center_side.begin(), center_side.end());
    for (const auto* m : parts)
        for (auto [u, v] : m->edges) {
            int center = cs.count(u) ? u : v;
            int prong = center == u ? v : u;
            if (!cs.count(center))
                throw Error("ConstructionFailed", "fork edge with no end in the center side");
            auto& f = by_center[center];
            f.center = center;
            f.prongs.push_back(prong);
        }
    ForkSystem fs;
    fs.colour = c;
    fs.ratio = ratio;
    fs.center_side = center_side;
    fs.prong_side = prong_side;
    for (auto& [_, f] : by_center) {
        if (static_cast<int>(f.prongs.size()) > ratio)
            throw Error("ConstructionFailed", "fork exceeds the ratio cap");
        fs.forks.push_back(f);
    }
    return fs;
}

Certificate finish_good_pair(const TripartiteGraph& g, Matching m, ForkSystem f,
                             const Rational& eta_prime, const std::string& stage) {
    int n = g.n_scale();
    Certificate cert;
    cert.kind = Certificate::Kind::GoodPair;
    cert.thresholds.m = (Rational(1) - eta_prime) * Rational(n);
    cert.thresholds.f = (Rational(1) - eta_prime) * frac(3, 2) * Rational(n);
    cert.thresholds.r = 3;
    cert.matching = std::move(m);
    cert.forks = std::move(f);
    if (Rational(cert.matching.size()) < cert.thresholds.m)
        throw Error("ConstructionFailed", stage + ": matching below (1-eta')n");
    if (Rational(cert.forks->size()) < cert.thresholds.f)
        throw Error("ConstructionFailed", stage + ": fork system below (1-eta')(3/2)n");
    auto bad = validate_certificate(g, cert);
    if (!bad.empty()) throw Error("ConstructionFailed", stage + ": " + bad.front());
    return cert;
}

}  // namespace

Certificate pyramid_certificate(const TripartiteGraph& g, const PyramidWitness& w,
                                const Rational& eta_prime) {
    require_witness(g, ExtremalWitness(w), w.eta, eta_prime, 3);
    int n = g.n_scale();
    const Rational eta = w.eta;
    Rational half_need = (Rational(1) - eta_prime) * frac(1, 2) * Rational(n);

    PyramidWitness p = w;
    if (p.d1p.size() < p.d2p.size()) {
        std::swap(p.d1, p.d2);
        std::swap(p.d1p, p.d2p);
    }

    if (p.mode == PyramidMode::Crossing) {
        Matching m = greedy_monochromatic_matching(g, p.d1, p.d2, eta);
        Colour hat = m.colour;
        std::vector<int> p1 = p.d1p, p2 = p.d2p;
        if (hat != p.c) std::swap(p1, p2);  // colour roles swap: pyramids become (D1,D2'),(D2,D1')
        if (p1.size() < p2.size()) {
            std::swap(p1, p2);
            std::swap(p.d1, p.d2);
        }
        // Fallback for degenerate c = c' crossings where the majority matching
        // lands in the opposite colour: all four D-D' pairs are c-complete, so
        // the tunnel-style two-matching construction applies verbatim.
        if (hat != p.c && p.c == p.cp) {
            std::vector<int> primes = concat(p.d1p, p.d2p);
            Matching m1 = greedy_pair_matching(g, p.c, p.d1, primes);
            Matching m2 = greedy_pair_matching(g, p.c, p.d2, primes);
            ForkSystem f = forks_from_matchings(p.c, {&m1, &m2}, primes, concat(p.d1, p.d2), 2);
            Matching big = m1.size() >= m2.size() ? m1 : m2;
            return finish_good_pair(g, big, f, eta_prime, "pyra:degenerate-crossing");
        }

        Matching m1 = greedy_pair_matching(g, hat, p.d1, p1);
        Matching m2 = greedy_pair_matching(g, hat, minus(p.d2, m.covered()), p2);
        Matching best;
        best.colour = hat;
        if (m.size() + m2.size() >= m1.size() + m2.size())
            best.edges = concat_edges(m, m2);
        else
            best.edges = concat_edges(m1, m2);
        ForkSystem f = forks_from_matchings(hat, {&m, &m1, &m2}, concat(p.d1, p2),
                                            concat(p.d2, p1), 2);
        return finish_good_pair(g, best, f, eta_prime, "pyra:cross");
    }

    // Tunnel. First look for a big c'-matching incident to the prime sets.
    std::vector<int> primes = concat(p.d1p, p.d2p);
    Matching ma = bipartite_max_matching(g, p.cp, p.d1, primes);
    Matching mb = bipartite_max_matching(g, p.cp, p.d2, primes);
    const Matching& big = ma.size() >= mb.size() ? ma : mb;
    if (Rational(big.size()) >= half_need) {
        Matching tunnel_m = greedy_pair_matching(g, p.cp, p.d1, p.d2);
        const std::vector<int>& center = ma.size() >= mb.size() ? p.d1 : p.d2;
        const std::vector<int>& far = ma.size() >= mb.size() ? p.d2 : p.d1;
        ForkSystem f = forks_from_matchings(p.cp, {&tunnel_m, &big}, center, concat(far, primes), 2);
        return finish_good_pair(g, tunnel_m, f, eta_prime, "pyra:tunnel1");
    }

    // No big c'-matching: the majority matchings of both D-sides must be in c.
    Matching m1 = greedy_preferring(g, p.c, p.d1, {concat(p.d1p, p.d2p)});
    Matching m2 = greedy_preferring(g, p.c, p.d2, {concat(p.d1p, p.d2p)});
    if (Rational(m1.size()) < half_need || Rational(m2.size()) < half_need)
        throw Error("ConstructionFailed", "pyra:tunnel2: c-matchings onto the primes fell short");
    Matching m3 = greedy_pair_matching(g, p.c, minus(p.d1, concat(m1.covered(), m2.covered())), p.d1p);
    ForkSystem f =
        forks_from_matchings(p.c, {&m1, &m2, &m3}, primes, concat(p.d1, p.d2), 3);

    Matching m_a = greedy_pair_matching(g, p.c, p.d1p, p.d1);
    Matching m_b = greedy_pair_matching(g, p.c, p.d2p, p.d2);
    Matching pair_m;
    pair_m.colour = p.c;
    pair_m.edges = concat_edges(m_a, m_b);
    return finish_good_pair(g, pair_m, f, eta_prime, "pyra:tunnel2");
}

Certificate spider_certificate(const TripartiteGraph& g, const SpiderWitness& w,
                               const Rational& eta_prime) {
    require_witness(g, ExtremalWitness(w), w.eta, eta_prime, 5);
    int n = g.n_scale();
    Colour c = w.c;
    Rational ones((std::int64_t)(w.a1.size() + w.b1.size() + w.c1.size()));
    Rational split = (Rational(1) - w.eta) * frac(3, 2) * Rational(n);

    if (ones < split) {
        // Case 1: matching over B1 and B_C, forks topped up over the class-2 sets.
        if (!w.a_b.empty() || !w.b_a.empty())
            throw Error("ConstructionFailed", "spider:ABempty: A_B or B_A non-empty in case 1");
        Matching m1 = greedy_preferring(g, c, w.b1, {w.a_c, w.c2});
        if (m1.size() != static_cast<int>(w.b1.size()))
            throw Error("ConstructionFailed", "spider:good1: B1 not fully matched");
        Matching m2 = greedy_pair_matching(g, c, w.b_c, w.a1);
        Matching m;
        m.colour = c;
        m.edges = concat_edges(m1, m2);

        std::vector<int> used = m1.covered();
        Matching m3 = greedy_pair_matching(g, c, minus(w.c_a, used), w.b1);
        Matching m4 = greedy_pair_matching(g, c, minus(w.c_b, used), w.a1);
        Matching m5 = greedy_pair_matching(g, c, minus(w.c_c, used), w.a1);
        ForkSystem f = forks_from_matchings(
            c, {&m, &m3, &m4, &m5}, concat(w.a1, w.b1),
            concat(concat(w.a2, w.b2), w.c2), 3);
        return finish_good_pair(g, m, f, eta_prime, "spider:good1");
    }

    if (w.c1.empty()) {
        // Case 2a: C2 is nearly a full class; 2-forks centered there.
        Matching m_a = greedy_pair_matching(g, c, w.c2, w.a1);
        Matching m_bp = greedy_pair_matching(g, c, minus(w.c2, m_a.covered()), w.b1);
        Matching m;
        m.colour = c;
        m.edges = concat_edges(m_a, m_bp);
        if (m.size() != static_cast<int>(w.c2.size()))
            throw Error("ConstructionFailed", "spider:C2fork: C2 not fully covered");
        // Extend m_bp to a maximal matching in K[B1, C2].
        Matching m_b = m_bp;
        std::vector<int> free_b1 = minus(w.b1, m_bp.covered());
        Matching ext = greedy_pair_matching(g, c, minus(w.c2, m_b.covered()), free_b1);
        m_b.edges = concat_edges(m_b, ext);
        ForkSystem f = forks_from_matchings(c, {&m_a, &m_b}, w.c2, concat(w.a1, w.b1), 2);
        return finish_good_pair(g, m, f, eta_prime, "spider:C2fork");
    }

    // Case 2b: C1 non-empty.
    Matching m1 = greedy_pair_matching(g, c, w.c1, w.b2);
    if (m1.size() != static_cast<int>(w.c1.size()))
        throw Error("ConstructionFailed", "spider:match: C1 not fully covered");
    std::vector<int> ab1 = concat(w.a1, w.b1);
    Matching m2 = greedy_pair_matching(g, c, w.c2, ab1);
    if (m2.size() != static_cast<int>(w.c2.size()))
        throw Error("ConstructionFailed", "spider:match: C2 not fully covered");
    Matching m;
    m.colour = c;
    m.edges = concat_edges(m1, m2);

    // 2-fork top-up on C2 against the unused class-1 vertices.
    std::vector<int> pool = minus(ab1, m2.covered());
    Bitset avail = to_bitset(g.num_vertices(), pool);
    std::vector<std::pair<int, int>> extra;
    for (int c2v : w.c2) {
        int got = 0;
        Bitset cand = g.neighbours(c2v, c) & avail;
        for (auto z = cand.find_first(); z != Bitset::npos && got < 2; z = cand.find_next(z)) {
            avail.reset(z);
            extra.emplace_back(c2v, static_cast<int>(z));
            ++got;
        }
    }
    Matching fprime;
    fprime.colour = c;
    fprime.edges = std::move(extra);
    ForkSystem f = forks_from_matchings(c, {&m, &fprime}, concat(w.c1, w.c2),
                                        concat(ab1, w.b2), 3);
    return finish_good_pair(g, m, f, eta_prime, "spider:fork");
}

Matching improve_matching(const TripartiteGraph& g, const Matching& m, const Rational& eta_prime) {
    if (m.colour != Colour::Green)
        throw Error("HypothesisViolated", "expects the maximum green connected matching");
    int n = g.n_scale();
    Rational sz(m.size());
    if (!(sz > eta_prime * Rational(n)) || !(sz < (Rational(1) - eta_prime) * Rational(n)))
        throw Error("HypothesisViolated", "need eta'*n < |M| < (1-eta')*n");

    // Blocks by class pair and the remainder sets.
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> block;
    Bitset covered = to_bitset(g.num_vertices(), m.covered());
    for (auto [u, v] : m.edges) {
        int cu = g.class_of(u), cv = g.class_of(v);
        if (cu > cv) std::swap(u, v), std::swap(cu, cv);
        block[{cu, cv}].emplace_back(u, v);
    }
    std::array<std::vector<int>, 3> rest;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!covered.test(v)) rest[g.class_of(v)].push_back(v);

    // Relabel classes so |R_A| >= |R_B| >= |R_C| (stable).
    std::array<int, 3> perm{0, 1, 2};
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return rest[a].size() > rest[b].size(); });
    auto blk = [&](int i, int j) -> const std::vector<std::pair<int, int>>& {
        int a = perm[i], b = perm[j];
        if (a > b) std::swap(a, b);
        static const std::vector<std::pair<int, int>> empty;
        auto it = block.find({a, b});
        return it == block.end() ? empty : it->second;
    };
    const std::vector<int>& ra = rest[perm[0]];
    const std::vector<int>& rb = rest[perm[1]];
    const std::vector<int>& rc = rest[perm[2]];

    // Hub vertex: removing it must leave the remainder red-connected.
    auto comps = colour_components(g, Colour::Red);
    std::vector<int> comp_of(g.num_vertices(), -1);
    for (const auto& c : comps)
        for (int v : c.vertices) comp_of[v] = c.id;
    std::map<int, int> hist;
    for (const auto& r : rest)
        for (int v : r) ++hist[comp_of[v]];
    int main_comp = -1;
    std::size_t best = 0;
    for (auto [id, cnt] : hist)
        if (static_cast<std::size_t>(cnt) > best) best = cnt, main_comp = id;
    std::size_t outside = ra.size() + rb.size() + rc.size() - best;
    int hub = -1;
    if (outside == 0) {
        hub = ra.empty() ? -1 : ra.front();
    } else if (outside == 1) {
        for (int v : ra)
            if (comp_of[v] != main_comp) hub = v;
        if (hub == -1)
            throw Error("ConstructionFailed", "imp:2: stray remainder vertex is not in R_A");
    } else {
        throw Error("ConstructionFailed", "imp:2: remainder is not red-connected minus one vertex");
    }

    // Block-by-block red matchings: for each matching edge, its end with fewer
    // green neighbours in the opposite remainder set gets a fresh red partner.
    Matching out;
    out.colour = Colour::Red;
    Bitset used(g.num_vertices());
    if (hub >= 0) used.set(hub);
    std::array<const std::vector<int>*, 3> opposite = {&ra, &rb, &rc};  // R_{D''} for blocks
    std::vector<int> x_leftover;  // uncovered ends of the (B,C) block
    for (int bi = 0; bi < 3; ++bi) {
        // block (D,D') with {D,D',D''} = {relabelled B,C,A}, {C,A,B}, {A,B,C}
        int i = (bi + 1) % 3, j = (bi + 2) % 3;
        const auto& edges = blk(i, j);
        const std::vector<int>& target = *opposite[bi];
        Bitset tb = to_bitset(g.num_vertices(), target);
        for (auto [u, v] : edges) {
            std::size_t gu = (g.neighbours(u, Colour::Green) & tb).count();
            std::size_t gv = (g.neighbours(v, Colour::Green) & tb).count();
            int w = gu <= gv ? u : v;
            Bitset cand = (g.neighbours(w, Colour::Red) & tb) & ~used;
            auto z = cand.find_first();
            if (z == Bitset::npos)
                throw Error("ConstructionFailed", "imp:3: block greedy found no red partner");
            used.set(z);
            out.edges.emplace_back(w, static_cast<int>(z));
            if (bi == 0) x_leftover.push_back(w == u ? v : u);
        }
    }

    // Remainder matching between what is left of R_A and R_B plus the
    // uncovered block ends.
    Bitset targets = to_bitset(g.num_vertices(), rb);
    for (int v : x_leftover) targets.set(v);
    targets &= ~used;
    for (int a : ra) {
        if (used.test(a) || a == hub) continue;
        Bitset cand = g.neighbours(a, Colour::Red) & targets;
        auto z = cand.find_first();
        if (z == Bitset::npos) continue;
        used.set(a);
        used.set(z);
        targets.reset(z);
        out.edges.emplace_back(a, static_cast<int>(z));
    }

    Rational gain = eta_prime * frac(1, 4) * Rational(n);
    if (Rational(out.size()) < Rational(m.size()) + gain)
        throw Error("ConstructionFailed", "imp:3: red matching not |M| + eta'*n/4 large");
    auto bad = validate_matching(g, out, true, false);
    if (!bad.empty()) throw Error("ConstructionFailed", "imp:3: " + bad.front());
    return out;
}

std::vector<std::string> validate_certificate(const TripartiteGraph& g, const Certificate& cert) {
    std::vector<std::string> bad;
    if (cert.kind == Certificate::Kind::OddMatching) {
        auto b = validate_matching(g, cert.matching, true, true);
        bad.insert(bad.end(), b.begin(), b.end());
        if (Rational(cert.matching.size()) < cert.thresholds.m)
            bad.push_back("odd matching below its size target");
        return bad;
    }
    auto b = validate_matching(g, cert.matching, true, false);
    bad.insert(bad.end(), b.begin(), b.end());
    if (!cert.forks) {
        bad.push_back("good pair without a fork system");
        return bad;
    }
    auto bf = validate_fork_system(g, *cert.forks, true);
    bad.insert(bad.end(), bf.begin(), bf.end());
    if (cert.forks->colour != cert.matching.colour)
        bad.push_back("matching and fork system differ in colour");
    if (cert.forks->ratio > cert.thresholds.r) bad.push_back("fork ratio above target");
    if (Rational(cert.matching.size()) < cert.thresholds.m)
        bad.push_back("matching below its size target");
    if (Rational(cert.forks->size()) < cert.thresholds.f)
        bad.push_back("fork system below its size target");
    return bad;
}

CertifyResult certify_good_or_odd(const TripartiteGraph& g, const Rational& eta_prime,
                                  const std::optional<ExtremalWitness>& witness) {
    const auto& s = g.class_sizes();
    if (s[0] != s[1] || s[1] != s[2])
        throw Error("UnbalancedClasses", "certification expects balanced classes");
    int n = g.n_scale();
    Rational odd_need = (Rational(1) - eta_prime) * frac(3, 4) * Rational(n);
    Rational m_need = (Rational(1) - eta_prime) * Rational(n);
    Rational f_need = (Rational(1) - eta_prime) * frac(3, 2) * Rational(n);

    CertifyResult res;

    // Exact odd connected matchings per colour.
    std::optional<Matching> best_odd;
    for (Colour c : {Colour::Green, Colour::Red}) {
        try {
            auto m = max_connected_matching(g, c, true);
            if (m && (!best_odd || m->size() > best_odd->size())) best_odd = m;
        } catch (const Error& e) {
            if (e.code() != "NotFound") throw;
        }
    }
    if (best_odd) {
        res.best_odd_matching = best_odd->size();
        res.best_odd_colour = best_odd->colour;
        if (Rational(best_odd->size()) >= odd_need) {
            Certificate cert;
            cert.kind = Certificate::Kind::OddMatching;
            cert.matching = *best_odd;
            cert.thresholds = {odd_need, Rational(0), 3};
            res.status = CertifyResult::Status::OddMatching;
            res.certificate = std::move(cert);
            return res;
        }
    }

    // Exact connected matchings plus 3-fork systems, colour by colour.
    for (Colour c : {Colour::Green, Colour::Red}) {
        std::optional<Matching> best_m;
        try {
            best_m = max_connected_matching(g, c, false);
        } catch (const Error& e) {
            if (e.code() != "NotFound") throw;
            continue;
        }
        std::optional<ForkSystem> best_f;
        for (const auto& comp : colour_components(g, c)) {
            if (comp.is_odd) continue;
            ForkSystem f = max_fork_system(g, c, comp, 3, CenterSide::Best);
            if (!best_f || f.size() > best_f->size()) best_f = std::move(f);
        }
        res.best_matching = std::max(res.best_matching, best_m ? best_m->size() : 0);
        res.best_fork_system = std::max(res.best_fork_system, best_f ? best_f->size() : 0);
        if (best_m && best_f && Rational(best_m->size()) >= m_need &&
            Rational(best_f->size()) >= f_need) {
            Certificate cert;
            cert.kind = Certificate::Kind::GoodPair;
            cert.matching = *best_m;
            cert.forks = *best_f;
            cert.thresholds = {m_need, f_need, 3};
            res.status = CertifyResult::Status::GoodPair;
            res.certificate = std::move(cert);
            return res;
        }
    }

    // Attached witness: run the matching extremal handler.
    if (witness) {
        try {
            Certificate cert = std::holds_alternative<PyramidWitness>(*witness)
                                   ? pyramid_certificate(g, std::get<PyramidWitness>(*witness), eta_prime)
                                   : spider_certificate(g, std::get<SpiderWitness>(*witness), eta_prime);
            res.status = CertifyResult::Status::ExtremalGoodPair;
            res.certificate = std::move(cert);
            return res;
        } catch (const Error& e) {
            res.note = std::string("extremal handler failed: ") + e.what();
        }
    }

    res.status = CertifyResult::Status::Inconclusive;
    if (res.note.empty())
        res.note = "best odd matching " + std::to_string(res.best_odd_matching) +
                   ", best matching " + std::to_string(res.best_matching) + ", best 3-fork system " +
                   std::to_string(res.best_fork_system);
    return res;
}

}  // namespace tritree
