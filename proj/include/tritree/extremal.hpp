#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tritree/structures.hpp"

namespace tritree {

enum class PyramidMode { Tunnel, Crossing };

struct PyramidWitness {
    std::vector<int> d1, d2, d1p, d2p;
    Colour c = Colour::Green;
    Colour cp = Colour::Red;  // c' of the tunnel/crossing
    PyramidMode mode = PyramidMode::Crossing;
    Rational eta;
};

struct SpiderWitness {
    std::vector<int> a1, a2, b1, b2, c1, c2;
    std::vector<int> a_b, a_c, b_a, b_c, c_a, c_b, c_c;  // the splits of A2, B2, C2
    Colour c = Colour::Green;
    Rational eta;
};

using ExtremalWitness = std::variant<PyramidWitness, SpiderWitness>;

struct CertificateThresholds {
    Rational m;  // required connected-matching size
    Rational f;  // required fork-system size (good pairs only)
    int r = 3;   // required fork ratio cap
};

/// Structural certificate: a connected odd matching, or a connected matching
/// plus a connected fork system sharing its colour.
struct Certificate {
    enum class Kind { OddMatching, GoodPair };
    Kind kind = Kind::OddMatching;
    Matching matching;
    std::optional<ForkSystem> forks;
    CertificateThresholds thresholds;

    Colour colour() const { return matching.colour; }
};

/// Re-derives every certificate invariant from the graph; empty means valid.
std::vector<std::string> validate_certificate(const TripartiteGraph& g, const Certificate& cert);

/// Checks every clause of the pyramid/spider definition literally.
std::vector<std::string> validate_witness(const TripartiteGraph& g, const ExtremalWitness& w);

/// Good pair from a pyramid configuration (three-case construction: crossing,
/// tunnel with a big c'-matching, tunnel without). Requires the witness to
/// validate at eta <= eta'/3.
Certificate pyramid_certificate(const TripartiteGraph& g, const PyramidWitness& w,
                                const Rational& eta_prime);

/// Good pair from a spider configuration (case split on |A1 u B1 u C1| and on
/// C1 = {}). Requires the witness to validate at eta <= eta'/5.
Certificate spider_certificate(const TripartiteGraph& g, const SpiderWitness& w,
                               const Rational& eta_prime);

/// Given a maximum green connected matching M with eta'*n < |M| < (1-eta')*n
/// on a non-extremal, non-odd instance, builds a strictly larger red connected
/// matching (>= |M| + eta'*n/4) from the blocks and remainder sets.
Matching improve_matching(const TripartiteGraph& g, const Matching& m, const Rational& eta_prime);

struct CertifyResult {
    enum class Status { OddMatching, GoodPair, ExtremalGoodPair, Inconclusive };
    Status status = Status::Inconclusive;
    std::optional<Certificate> certificate;
    // Best sizes seen during exact search, for Inconclusive reports.
    int best_odd_matching = 0;
    int best_matching = 0;
    int best_fork_system = 0;
    Colour best_odd_colour = Colour::Green;
    std::string note;
};

/// Either-good-or-odd search: exact maximum odd connected matchings, then
/// exact connected matchings + 3-fork systems per colour, then the extremal
/// handler when a planted witness is attached. Inconclusive is a value, never
/// an error.
CertifyResult certify_good_or_odd(const TripartiteGraph& g, const Rational& eta_prime,
                                  const std::optional<ExtremalWitness>& witness = std::nullopt);

}  // namespace tritree
