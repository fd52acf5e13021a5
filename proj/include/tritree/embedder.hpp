#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tritree/assignment.hpp"
#include "tritree/graph.hpp"
#include "tritree/regularity.hpp"
#include "tritree/tree.hpp"

namespace tritree {

/// Vertices of the pool with at least (d-eps)|X| colour-c neighbours in X.
std::vector<int> typical_vertices(const TripartiteGraph& host, Colour c,
                                  const std::vector<int>& pool, const std::vector<int>& x,
                                  const Rational& d, const Rational& eps, int cluster_size);

struct Embedding {
    std::vector<int> f;  // tree vertex -> host vertex
    Colour colour = Colour::Green;
};

struct EmbedParams {
    Rational d{1, 2};
    Rational eps{1, 100};
    Rational rho{1, 4};
    int delta = 0;              // maximum tree degree the run must support
    bool instrumented = false;  // assert the per-step candidate floors
};

/// Diagnostic state dump emitted when no typical image exists.
class EmbedError : public Error {
public:
    EmbedError(const std::string& detail, std::string dump)
        : Error("NoTypicalVertex", detail), dump_(std::move(dump)) {}
    const std::string& state_dump() const { return dump_; }

private:
    std::string dump_;
};

/// Greedy tree embedding along the decomposition order: cut vertices into
/// connecting spaces, shrubs into embedding spaces, reservoirs carved around
/// each cut vertex and restored after its child shrubs.
Embedding embed(const Tree& tree, const TreeDecomposition& decomp,
                const ClusterAssignment& assignment, const TripartiteGraph& host,
                const Partition& partition, Colour colour, const EmbedParams& params);

/// Independent checker: injectivity, adjacency, colour, cluster consistency,
/// all re-derived from raw data.
std::vector<std::string> verify_embedding(const Tree& tree, const Embedding& emb,
                                          const TripartiteGraph& host,
                                          const std::optional<std::vector<int>>& h = std::nullopt,
                                          const Partition* partition = nullptr);

}  // namespace tritree
