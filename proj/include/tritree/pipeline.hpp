#pragma once

#include <cstdint>
#include <optional>

#include "tritree/assignment.hpp"
#include "tritree/embedder.hpp"
#include "tritree/instances.hpp"
#include "tritree/json_io.hpp"
#include "tritree/regularity.hpp"

namespace tritree {

struct PipelineParams {
    int k = 6;                    // total clusters (multiple of 3)
    Rational eta_prime{1, 20};    // structural certificate slack
    Rational mu{1, 2};            // Theorem-level slack: t <= (3-mu)n/2
    Rational eps_audit{1, 20};    // regularity audit tolerance
    Rational d{4, 5};             // audit density floor
    Rational eps_cut{1, 200};     // cut granularity / capacity slack
    Rational eta_check{1, 5};     // K_eta requirement on the reduced graph
    std::optional<int> S_override;
    int audit_samples = 200;
    int fork_retries = 20;
    std::uint64_t seed = 0;
    bool instrumented = false;
};

/// Exit codes: 0 success, 2 precondition, 3 inconclusive certificate,
/// 4 embedding failure, 5 verification failure.
struct PipelineReport {
    int exit_code = 0;
    std::string status;       // "EMBEDDED" or the failing stage
    json stages = json::array();
    std::optional<Certificate> certificate;
    std::optional<ValidAssignment> assignment;
    std::optional<Embedding> embedding;
    json to_json() const;
};

PipelineReport run_pipeline(const TripartiteGraph& host, const Tree& tree,
                            const PipelineParams& params);

}  // namespace tritree
