#pragma once

#include <cstdint>
#include <optional>

#include "tritree/extremal.hpp"
#include "tritree/tree.hpp"

namespace tritree {

/// Complete K_{n,n,n} with each edge green independently with probability
/// p_green, red otherwise.
TripartiteGraph gen_random_colouring(int n, double p_green, std::uint64_t seed);

/// Random tripartite host: each cross pair present with probability p, present
/// edges coloured green with probability p_green.
TripartiteGraph gen_sparse_host(int n, double p, std::uint64_t seed, double p_green = 0.5);

struct PlantedInstance {
    TripartiteGraph graph;
    ExtremalWitness witness;
};

PlantedInstance gen_pyramid(int n, const Rational& eta, PyramidMode mode, Colour c, Colour cp,
                            std::uint64_t seed);

enum class SpiderProfile {
    Balanced,       // |A1 u B1 u C1| below (1-eta)(3/2)n, C1 empty
    BalancedWithC1, // below the split with a small C1
    TwoForks,       // above the split, C1 empty
    Cover           // above the split, C1 non-empty
};

PlantedInstance gen_spider(int n, const Rational& eta, SpiderProfile profile, std::uint64_t seed);

/// Cluster-level template for planted pipeline hosts: a coloured tripartite
/// graph over k clusters (k/3 per class) whose green subgraph has an odd
/// connected matching.
TripartiteGraph default_pipeline_template();

/// Blow the template up to a host: cluster i becomes L consecutive vertices,
/// each template edge a monochromatic pair with edge probability p.
TripartiteGraph gen_planted_host(const TripartiteGraph& reduced_template, int L, double p,
                                 std::uint64_t seed);

// Brute-force oracles for the test suites. Exponential; hard vertex caps.

int oracle_max_connected_matching(const TripartiteGraph& g, Colour c, bool require_odd);

int oracle_max_fork_system(const TripartiteGraph& g, Colour c, const ColourComponent& comp,
                           int ratio);

bool oracle_tree_embedding(const Tree& t, const TripartiteGraph& host, Colour c);

}  // namespace tritree
