#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tritree/graph.hpp"

namespace tritree {

/// Equal-size clusters per class plus a bin of leftovers.
struct Partition {
    std::vector<std::vector<int>> clusters;  // sorted vertex lists
    std::vector<int> bin;
    std::vector<int> class_of;  // per cluster: 0,1,2
    int L = 0;                  // common cluster size
};

Partition equipartition(const TripartiteGraph& host, int k, std::uint64_t seed);

struct PairAudit {
    int i = -1, j = -1;
    Rational density_all{0};
    Rational density_green{0};
    Rational density_red{0};
    Rational sampled_deviation{0};
    int non_typical = 0;
    bool pass = false;
    std::string reason;
    /// Certified irregularity witness: a subset pair whose density deviates by
    /// more than eps (re-checkable from raw data).
    std::optional<std::pair<std::vector<int>, std::vector<int>>> fail_witness;
};

/// Monte-Carlo regularity audit of one cluster pair at (eps, d): samples
/// subset pairs of size ceil(eps*L), tracks the largest density deviation,
/// and counts vertices non-typical against a sampled subset. A Pass is
/// evidence; a Fail carries a certified witness.
PairAudit audit_pair(const TripartiteGraph& host, std::optional<Colour> colour,
                     const std::vector<int>& vi, const std::vector<int>& vj, const Rational& eps,
                     const Rational& d, int num_samples, std::uint64_t seed);

struct ReducedHost {
    TripartiteGraph reduced;           // coloured graph over surviving clusters
    Partition partition;               // surviving clusters, re-indexed
    std::vector<int> source_cluster;   // reduced vertex -> original cluster id
    std::vector<PairAudit> audits;     // one record per audited pair
};

/// Majority-coloured reduced graph: edge ij present iff the pair passes the
/// audit; green iff the green density is at least 1/2. Clusters failing more
/// than sqrt(eps)*k audits move to the bin, classes kept balanced. Throws
/// TooManyIrregularPairs when the survivors leave K_{eta_check}.
ReducedHost reduced_colour_graph(const TripartiteGraph& host, const Partition& p,
                                 const Rational& eps, const Rational& d, int num_samples,
                                 std::uint64_t seed, const Rational& eta_check);

}  // namespace tritree
