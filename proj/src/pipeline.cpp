#include "tritree/pipeline.hpp"

#include <algorithm>

namespace tritree {

json PipelineReport::to_json() const {
    json j;
    j["exit_code"] = exit_code;
    j["status"] = status;
    j["stages"] = stages;
    if (certificate) j["certificate"] = certificate_to_json(*certificate);
    if (embedding) {
        j["embedding"] = {{"f", embedding->f}, {"colour", embedding->colour == Colour::Green ? "G" : "R"}};
    }
    return j;
}

PipelineReport run_pipeline(const TripartiteGraph& host, const Tree& tree,
                            const PipelineParams& params) {
    PipelineReport rep;
    auto stage = [&](const std::string& name, bool ok, json details) {
        details["stage"] = name;
        details["ok"] = ok;
        rep.stages.push_back(std::move(details));
    };

    // Theorem-level parameter validation: t <= (3-mu) n / 2.
    {
        const auto& cs = host.class_sizes();
        int n = host.n_scale();
        bool balanced = cs[0] == cs[1] && cs[1] == cs[2];
        Rational cap = (Rational(3) - params.mu) * Rational(n) / Rational(2);
        bool ok = balanced && Rational(tree.order()) <= cap;
        stage("parameters", ok,
              {{"t", tree.order()},
               {"max_t", cap.str()},
               {"delta", tree.max_degree()},
               {"balanced", balanced}});
        if (!ok) {
            rep.exit_code = 2;
            rep.status = "parameters";
            return rep;
        }
    }

    // Regularity: equipartition + audited majority-coloured reduced graph.
    Partition part;
    ReducedHost red;
    try {
        part = equipartition(host, params.k, params.seed);
        red = reduced_colour_graph(host, part, params.eps_audit, params.d, params.audit_samples,
                                   params.seed + 1, params.eta_check);
        int passed = 0;
        for (const auto& a : red.audits) passed += a.pass;
        stage("regularity", true,
              {{"clusters", red.reduced.num_vertices()},
               {"L", red.partition.L},
               {"audits_passed", passed},
               {"audits_total", red.audits.size()},
               {"bin", red.partition.bin.size()}});
    } catch (const Error& e) {
        stage("regularity", false, {{"error", e.what()}});
        rep.exit_code = 2;
        rep.status = "regularity";
        return rep;
    }

    // Structural certificate on the reduced graph.
    CertifyResult cert = certify_good_or_odd(red.reduced, params.eta_prime);
    {
        json d{{"best_odd_matching", cert.best_odd_matching},
               {"best_matching", cert.best_matching},
               {"best_fork_system", cert.best_fork_system}};
        if (cert.certificate) {
            d["kind"] = cert.certificate->kind == Certificate::Kind::OddMatching ? "odd_matching"
                                                                                 : "good_pair";
            d["colour"] = name(cert.certificate->colour());
            d["matching"] = cert.certificate->matching.size();
            d["m_required"] = cert.certificate->thresholds.m.str();
            if (cert.certificate->forks) {
                d["forks"] = cert.certificate->forks->size();
                d["f_required"] = cert.certificate->thresholds.f.str();
            }
        } else {
            d["note"] = cert.note;
        }
        stage("certificate", cert.certificate.has_value(), std::move(d));
        if (!cert.certificate) {
            rep.exit_code = 3;
            rep.status = "certificate";
            return rep;
        }
    }
    rep.certificate = cert.certificate;

    // Valid assignment (case split on t2 <= t/3 happens inside).
    ValidAssignment va;
    const int L = red.partition.L;
    try {
        AssignmentParams ap;
        ap.mu = params.mu;
        ap.eps = params.eps_cut;
        ap.S_override = params.S_override;
        ap.fork_retries = params.fork_retries;
        ap.seed = params.seed + 2;
        ap.host_ratio = Rational(L);
        va = build_valid_assignment(tree, red.reduced, *cert.certificate, ap);
        int max_load = *std::max_element(va.assignment.loads.begin(), va.assignment.loads.end());
        stage("assignment", true,
              {{"S", va.decomposition.S},
               {"cut", va.decomposition.cut.size()},
               {"cut_target_paper", (params.eps_cut * Rational(L)).str()},
               {"shrubs", va.decomposition.shrubs.size()},
               {"route", va.used_fork_route ? "forks" : "matching"},
               {"max_load", max_load},
               {"load_cap", ((Rational(1) - va.assignment.rho) * va.assignment.L).str()},
               {"changed_by_repair", va.changed}});
    } catch (const Error& e) {
        stage("assignment", false, {{"error", e.what()}});
        rep.exit_code = 2;
        rep.status = "assignment";
        return rep;
    }
    rep.assignment = va;

    // Embedding-lemma feasibility, evaluated and reported on both sides: the
    // paper form ((d*rho/10 - 10*eps) n/k vs |C|+S+Delta) is diagnostic; the
    // operational gates are enforced inside embed().
    {
        Rational rho = params.mu * Rational(1, 2);
        Rational lhs = (params.d * rho * Rational(1, 10) - Rational(10) * params.eps_audit) * Rational(L);
        std::int64_t rhs = static_cast<std::int64_t>(va.decomposition.cut.size()) +
                           va.decomposition.S + tree.max_degree();
        stage("feasibility", true,
              {{"paper_lhs", lhs.str()},
               {"paper_rhs", rhs},
               {"paper_form_holds", lhs >= Rational(rhs)},
               {"connecting_space", (rho * Rational(1, 2) * Rational(L)).floor()},
               {"reservoir", (Rational(5) * params.eps_audit * Rational(L)).ceil() + tree.max_degree()}});
    }

    // Greedy embedding plus the independent verifier.
    try {
        EmbedParams ep;
        ep.d = params.d;
        ep.eps = params.eps_audit;
        ep.rho = params.mu * Rational(1, 2);
        ep.delta = tree.max_degree();
        ep.instrumented = params.instrumented;
        Embedding emb = embed(tree, va.decomposition, va.assignment, host, red.partition,
                              cert.certificate->colour(), ep);
        rep.embedding = emb;
        stage("embedding", true, {{"colour", name(emb.colour)}, {"vertices", emb.f.size()}});
    } catch (const EmbedError& e) {
        stage("embedding", false, {{"error", e.what()}, {"dump", e.state_dump()}});
        rep.exit_code = 4;
        rep.status = "embedding";
        return rep;
    } catch (const Error& e) {
        stage("embedding", false, {{"error", e.what()}});
        rep.exit_code = 4;
        rep.status = "embedding";
        return rep;
    }

    auto bad = verify_embedding(tree, *rep.embedding, host, rep.assignment->assignment.h,
                                &red.partition);
    stage("verification", bad.empty(), {{"violations", bad}});
    if (!bad.empty()) {
        rep.exit_code = 5;
        rep.status = "verification";
        return rep;
    }

    rep.exit_code = 0;
    rep.status = "EMBEDDED";
    return rep;
}

}  // namespace tritree
