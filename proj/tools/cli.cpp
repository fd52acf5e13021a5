#include <atomic>
#include <chrono>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "tritree/pipeline.hpp"

using namespace tritree;

namespace {

int g_log_level = 1;  // 0 quiet, 1 normal, 2 debug

void log_line(int level, const std::string& s) {
    if (g_log_level >= level) std::cerr << s << "\n";
}

Colour parse_colour(const std::string& s) {
    if (s == "G" || s == "g" || s == "green") return Colour::Green;
    if (s == "R" || s == "r" || s == "red") return Colour::Red;
    throw CLI::ValidationError("colour must be G or R");
}

void write_or_print(const std::string& out, const json& j) {
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else
        save_json_file(out, j);
}

struct GenOpts {
    std::string type = "random";
    int n = 60;
    double p_green = 0.5;
    double p = 0.3;
    std::string eta = "0.01";
    std::string mode = "crossing";
    std::string c = "G", cp = "R";
    std::string profile = "balanced";
    int L = 200;
    double host_p = 1.0;
    std::uint64_t seed = 0;
    std::string out, witness_out;
};

int cmd_gen(const GenOpts& o) {
    Rational eta = Rational::from_decimal(o.eta);
    if (o.type == "random") {
        write_or_print(o.out, graph_to_json(gen_random_colouring(o.n, o.p_green, o.seed)));
    } else if (o.type == "sparse") {
        write_or_print(o.out, graph_to_json(gen_sparse_host(o.n, o.p, o.seed, o.p_green)));
    } else if (o.type == "pyramid" || o.type == "spider") {
        PlantedInstance inst =
            o.type == "pyramid"
                ? gen_pyramid(o.n, eta,
                              o.mode == "tunnel" ? PyramidMode::Tunnel : PyramidMode::Crossing,
                              parse_colour(o.c), parse_colour(o.cp), o.seed)
                : gen_spider(o.n, eta,
                             o.profile == "two-forks"
                                 ? SpiderProfile::TwoForks
                                 : (o.profile == "cover"
                                        ? SpiderProfile::Cover
                                        : (o.profile == "balanced-c1" ? SpiderProfile::BalancedWithC1
                                                                      : SpiderProfile::Balanced)),
                             o.seed);
        write_or_print(o.out, graph_to_json(inst.graph));
        if (!o.witness_out.empty()) save_json_file(o.witness_out, witness_to_json(inst.witness));
    } else if (o.type == "planted") {
        write_or_print(o.out, graph_to_json(gen_planted_host(default_pipeline_template(), o.L,
                                                             o.host_p, o.seed)));
    } else {
        throw CLI::ValidationError("unknown --type " + o.type);
    }
    return 0;
}

int cmd_analyze(const std::string& graph_file, const std::string& witness_file,
                const std::string& eta_prime_s, const std::string& out) {
    TripartiteGraph g = graph_from_json(load_json_file(graph_file));
    std::optional<ExtremalWitness> w;
    if (!witness_file.empty()) w = witness_from_json(load_json_file(witness_file));
    Rational eta_prime = Rational::from_decimal(eta_prime_s);

    CertifyResult res = certify_good_or_odd(g, eta_prime, w);
    log_line(1, "analyze: best odd matching " + std::to_string(res.best_odd_matching) +
                    ", best matching " + std::to_string(res.best_matching) +
                    ", best 3-fork system " + std::to_string(res.best_fork_system));
    if (!res.certificate) {
        log_line(1, "analyze: INCONCLUSIVE (" + res.note + ")");
        json j{{"status", "inconclusive"}, {"note", res.note}};
        write_or_print(out, j);
        return 3;
    }
    const Certificate& cert = *res.certificate;
    auto bad = validate_certificate(g, cert);
    if (!bad.empty()) {
        log_line(0, "analyze: certificate failed revalidation: " + bad.front());
        return 5;
    }
    log_line(1, std::string("analyze: ") +
                    (cert.kind == Certificate::Kind::OddMatching ? "ODD-MATCHING" : "GOOD-PAIR") +
                    " in " + name(cert.colour()) + ", matching " +
                    std::to_string(cert.matching.size()) +
                    (cert.forks ? ", forks " + std::to_string(cert.forks->size()) : std::string()));
    write_or_print(out, certificate_to_json(cert));
    return 0;
}

int cmd_assign(const std::string& tree_file, const std::string& reduced_file,
               const std::string& cert_file, const std::string& mu_s, const std::string& eps_s,
               int S, const std::string& nk_s, std::uint64_t seed, const std::string& out) {
    Tree t = tree_from_json(load_json_file(tree_file));
    TripartiteGraph reduced = graph_from_json(load_json_file(reduced_file));
    Certificate cert = certificate_from_json(load_json_file(cert_file));
    AssignmentParams p;
    p.mu = Rational::from_decimal(mu_s);
    p.eps = Rational::from_decimal(eps_s);
    if (S > 0) p.S_override = S;
    p.seed = seed;
    p.host_ratio = Rational::from_decimal(nk_s);
    ValidAssignment va = build_valid_assignment(t, reduced, cert, p);
    json j{{"h", va.assignment.h},
           {"cut", va.decomposition.cut},
           {"params", {{"rho", va.assignment.rho.str()}, {"L", va.assignment.L.str()}}}};
    write_or_print(out, j);
    log_line(1, "assign: S=" + std::to_string(va.decomposition.S) +
                    " |C|=" + std::to_string(va.decomposition.cut.size()) +
                    " changed=" + std::to_string(va.changed));
    return 0;
}

int cmd_pipeline_run(const std::string& host_file, int gen_L, double gen_p,
                     const std::string& tree_file, int gen_t, int gen_delta,
                     PipelineParams params, const std::string& report_out) {
    TripartiteGraph host = host_file.empty()
                               ? gen_planted_host(default_pipeline_template(), gen_L, gen_p,
                                                  params.seed + 100)
                               : graph_from_json(load_json_file(host_file));
    Tree tree = tree_file.empty() ? random_tree(gen_t, gen_delta, params.seed + 200)
                                  : tree_from_json(load_json_file(tree_file));

    auto t0 = std::chrono::steady_clock::now();
    PipelineReport rep = run_pipeline(host, tree, params);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();

    json j = rep.to_json();
    j["elapsed_ms"] = ms;
    write_or_print(report_out, j);
    log_line(1, "pipeline: " + rep.status + " (" + std::to_string(ms) + " ms)");
    return rep.exit_code;
}

int cmd_verify(const std::string& host_file, const std::string& tree_file,
               const std::string& emb_file) {
    TripartiteGraph host = graph_from_json(load_json_file(host_file));
    Tree tree = tree_from_json(load_json_file(tree_file));
    json je = load_json_file(emb_file);
    Embedding emb;
    emb.f = je.at("f").get<std::vector<int>>();
    emb.colour = je.at("colour").get<std::string>() == "G" ? Colour::Green : Colour::Red;
    auto bad = verify_embedding(tree, emb, host);
    for (const auto& b : bad) log_line(0, "verify: " + b);
    log_line(1, bad.empty() ? "verify: OK" : "verify: FAILED");
    return bad.empty() ? 0 : 5;
}

int cmd_oracle(const std::string& what, const std::string& graph_file,
               const std::string& tree_file, const std::string& colour_s, bool odd) {
    Colour c = parse_colour(colour_s);
    if (what == "matching") {
        TripartiteGraph g = graph_from_json(load_json_file(graph_file));
        std::cout << oracle_max_connected_matching(g, c, odd) << "\n";
        return 0;
    }
    if (what == "forks") {
        TripartiteGraph g = graph_from_json(load_json_file(graph_file));
        int best = 0;
        for (const auto& comp : colour_components(g, c))
            if (!comp.is_odd) best = std::max(best, oracle_max_fork_system(g, c, comp, 3));
        std::cout << best << "\n";
        return 0;
    }
    if (what == "embedding") {
        TripartiteGraph g = graph_from_json(load_json_file(graph_file));
        Tree t = tree_from_json(load_json_file(tree_file));
        std::cout << (oracle_tree_embedding(t, g, c) ? "true" : "false") << "\n";
        return 0;
    }
    throw CLI::ValidationError("unknown oracle " + what);
}

int cmd_bench(const std::string& experiment, int count, int n, const std::string& eta_prime_s,
              std::uint64_t seed, int threads) {
    Rational eta_prime = Rational::from_decimal(eta_prime_s);
    if (threads < 1) threads = 1;
    std::vector<json> rows(count);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            if (experiment == "certify") {
                TripartiteGraph g = gen_random_colouring(n, 0.5, seed + i);
                auto t0 = std::chrono::steady_clock::now();
                CertifyResult res = certify_good_or_odd(g, eta_prime);
                auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
                rows[i] = {{"seed", seed + i},
                           {"status", res.certificate
                                          ? (res.status == CertifyResult::Status::OddMatching
                                                 ? "odd"
                                                 : "good")
                                          : "inconclusive"},
                           {"best_odd", res.best_odd_matching},
                           {"ms", ms}};
            } else {
                throw Error("BadArguments", "unknown experiment " + experiment);
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    int ok = 0;
    for (const auto& r : rows) {
        std::cout << r.dump() << "\n";
        if (r.at("status") != "inconclusive") ++ok;
    }
    log_line(1, "bench: " + std::to_string(ok) + "/" + std::to_string(count) + " certified");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"monochromatic bounded-degree tree embedding in 2-coloured tripartite hosts"};
    app.require_subcommand(1);
    app.add_option("--log-level", g_log_level, "0 quiet, 1 normal, 2 debug");

    GenOpts gen;
    auto* sgen = app.add_subcommand("gen", "generate hosts, plants, and trees");
    sgen->add_option("--type", gen.type, "random|sparse|pyramid|spider|planted");
    sgen->add_option("--n", gen.n);
    sgen->add_option("--p-green", gen.p_green);
    sgen->add_option("--p", gen.p);
    sgen->add_option("--eta", gen.eta);
    sgen->add_option("--mode", gen.mode, "tunnel|crossing");
    sgen->add_option("--c", gen.c);
    sgen->add_option("--cp", gen.cp);
    sgen->add_option("--profile", gen.profile, "balanced|balanced-c1|two-forks|cover");
    sgen->add_option("--L", gen.L);
    sgen->add_option("--host-p", gen.host_p);
    sgen->add_option("--seed", gen.seed);
    sgen->add_option("--out", gen.out);
    sgen->add_option("--witness-out", gen.witness_out);

    std::string a_graph, a_witness, a_eta_prime = "0.05", a_out;
    auto* san = app.add_subcommand("analyze", "extract a structural certificate");
    san->add_option("--graph", a_graph)->required();
    san->add_option("--witness", a_witness);
    san->add_option("--eta-prime", a_eta_prime);
    san->add_option("--out", a_out);

    std::string as_tree, as_reduced, as_cert, as_mu = "0.5", as_eps = "0.005", as_nk = "1000", as_out;
    int as_S = 0;
    std::uint64_t as_seed = 0;
    auto* sas = app.add_subcommand("assign", "build a valid assignment");
    sas->add_option("--tree", as_tree)->required();
    sas->add_option("--reduced", as_reduced)->required();
    sas->add_option("--certificate", as_cert)->required();
    sas->add_option("--mu", as_mu);
    sas->add_option("--eps", as_eps);
    sas->add_option("--S", as_S);
    sas->add_option("--nk", as_nk, "host vertices per cluster (n/k)");
    sas->add_option("--seed", as_seed);
    sas->add_option("--out", as_out);

    std::string p_host, p_tree, p_report;
    int p_L = 1000, p_t = 2000, p_delta = 8, p_S = 0;
    double p_hostp = 1.0;
    PipelineParams pp;
    std::string p_eta_prime = "0.05", p_mu = "0.5", p_eps = "0.05", p_d = "0.8", p_eps_cut = "0.005";
    auto* spl = app.add_subcommand("pipeline", "full generate-certify-assign-embed-verify run");
    spl->add_option("--host", p_host, "host graph JSON (default: planted host)");
    spl->add_option("--tree", p_tree, "tree JSON (default: random tree)");
    spl->add_option("--L", p_L);
    spl->add_option("--host-p", p_hostp);
    spl->add_option("--t", p_t);
    spl->add_option("--delta", p_delta);
    spl->add_option("--k", pp.k);
    spl->add_option("--eta-prime", p_eta_prime);
    spl->add_option("--mu", p_mu);
    spl->add_option("--eps", p_eps, "audit epsilon");
    spl->add_option("--d", p_d);
    spl->add_option("--eps-cut", p_eps_cut);
    spl->add_option("--S", p_S);
    spl->add_option("--samples", pp.audit_samples);
    spl->add_option("--seed", pp.seed);
    spl->add_option("--report", p_report);
    spl->add_flag("--instrumented", pp.instrumented);

    std::string v_host, v_tree, v_emb;
    auto* sv = app.add_subcommand("verify", "re-check an embedding from raw data");
    sv->add_option("--host", v_host)->required();
    sv->add_option("--tree", v_tree)->required();
    sv->add_option("--embedding", v_emb)->required();

    std::string o_what, o_graph, o_tree, o_colour = "G";
    bool o_odd = false;
    auto* so = app.add_subcommand("oracle", "brute-force ground truth on small instances");
    so->add_option("--what", o_what, "matching|forks|embedding")->required();
    so->add_option("--graph", o_graph);
    so->add_option("--tree", o_tree);
    so->add_option("--colour", o_colour);
    so->add_flag("--odd", o_odd);

    std::string b_experiment = "certify", b_eta_prime = "0.1";
    int b_count = 20, b_n = 12, b_threads = 1;
    std::uint64_t b_seed = 0;
    auto* sb = app.add_subcommand("bench", "batch experiments");
    sb->add_option("--experiment", b_experiment);
    sb->add_option("--count", b_count);
    sb->add_option("--n", b_n);
    sb->add_option("--eta-prime", b_eta_prime);
    sb->add_option("--seed", b_seed);
    sb->add_option("--threads", b_threads);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sgen->parsed()) return cmd_gen(gen);
        if (san->parsed()) return cmd_analyze(a_graph, a_witness, a_eta_prime, a_out);
        if (sas->parsed())
            return cmd_assign(as_tree, as_reduced, as_cert, as_mu, as_eps, as_S, as_nk, as_seed,
                              as_out);
        if (spl->parsed()) {
            pp.eta_prime = Rational::from_decimal(p_eta_prime);
            pp.mu = Rational::from_decimal(p_mu);
            pp.eps_audit = Rational::from_decimal(p_eps);
            pp.d = Rational::from_decimal(p_d);
            pp.eps_cut = Rational::from_decimal(p_eps_cut);
            if (p_S > 0) pp.S_override = p_S;
            return cmd_pipeline_run(p_host, p_L, p_hostp, p_tree, p_t, p_delta, pp, p_report);
        }
        if (sv->parsed()) return cmd_verify(v_host, v_tree, v_emb);
        if (so->parsed()) return cmd_oracle(o_what, o_graph, o_tree, o_colour, o_odd);
        if (sb->parsed()) return cmd_bench(b_experiment, b_count, b_n, b_eta_prime, b_seed, b_threads);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
