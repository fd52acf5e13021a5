#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tritree/extremal.hpp"
#include "tritree/graph.hpp"
#include "tritree/tree.hpp"

namespace tritree {

/// Per-shrub colour-class sizes (a_{i,1}, a_{i,2}) with row sums capped by S.
struct WeightTable {
    std::vector<std::pair<int, int>> rows;
    int S = 0;
    int t1 = 0, t2 = 0;

    int t() const { return t1 + t2; }
    static WeightTable from_decomposition(const Tree& tree, const TreeDecomposition& d);
    void validate() const;
};

/// phi: row x side -> matching vertex, phi(i,1)phi(i,2) an edge of M, each
/// vertex load at most t/(2|M|) + 2S (two-round greedy; bound asserted).
std::vector<std::pair<int, int>> assign_to_matching(const WeightTable& w, const Matching& m);

/// phi: row x side -> fork vertex with phi(i,1) a prong and phi(i,2) its
/// center. Rows are pre-grouped to sums >= S/2, prongs sampled uniformly;
/// accepted only when both load inequalities of the lemma hold. Returns
/// nullopt when the retry budget is exhausted.
struct ForkAssignment {
    std::vector<std::pair<int, int>> phi;
    int attempts = 0;
};
std::optional<ForkAssignment> assign_to_forks(const WeightTable& w, const ForkSystem& f,
                                              int retries, std::uint64_t seed);

/// Shortest even and odd walks between u and v in the colour subgraph of the
/// reduced graph (BFS on the parity-doubled graph).
struct WalkPair {
    std::optional<std::vector<int>> even;
    std::optional<std::vector<int>> odd;
};
WalkPair walk_parity(const TripartiteGraph& reduced, Colour c, int u, int v);

/// Transforms a per-shrub homomorphism psi (defined off the cut) into a full
/// homomorphism h with |h(N(x))| <= 2 everywhere, changing at most
/// 3|C|*Delta^(2k+1) vertices (root-to-leaves walk splicing).
struct RepairResult {
    std::vector<int> h;
    std::int64_t changed = 0;
};
RepairResult repair_homomorphism(const Tree& t, const TreeDecomposition& d,
                                 const std::vector<int>& psi, const TripartiteGraph& reduced,
                                 Colour c);

struct ClusterAssignment {
    std::vector<int> h;      // tree vertex -> reduced-graph vertex
    std::vector<int> loads;  // per reduced vertex
    Rational rho{0};
    Rational L{0};  // the Def-valid capacity parameter (1-eps)*n/k
};

/// Independent validity checker (shares no code with the builder): h is a
/// homomorphism into the colour subgraph, |h(N(x))| <= 2, and every load is
/// strictly below (1-rho)*L.
std::vector<std::string> check_valid(const Tree& t, const std::vector<int>& h,
                                     const TripartiteGraph& reduced, Colour c,
                                     const Rational& rho, const Rational& L);

struct AssignmentParams {
    Rational mu{1, 2};
    Rational eps{1, 100};     // cut granularity and capacity slack
    std::optional<int> S_override;
    int fork_retries = 20;
    std::uint64_t seed = 0;
    Rational host_ratio{0};   // n/k: host vertices per cluster (required)
};

struct ValidAssignment {
    TreeDecomposition decomposition;
    ClusterAssignment assignment;
    std::vector<int> psi;           // the pre-repair map (cut vertices -1)
    bool used_fork_route = false;
    std::int64_t changed = 0;       // vertices where h differs from psi
};

/// Lemma-valid pipeline: S-cut, shrub distribution over the certificate's
/// matching or fork system (case split on t2 <= t/3), homomorphism repair,
/// and the final validity check at rho = mu/2, L = (1-eps)*n/k.
ValidAssignment build_valid_assignment(const Tree& tree, const TripartiteGraph& reduced,
                                       const Certificate& cert, const AssignmentParams& params);

}  // namespace tritree
