// proxcert: certify proximity and sparsity bounds for small integer
// programs with exact arithmetic.
//
// Exit codes: 0 success, 2 validation or assumption failure, 3 resource
// limit, 4 internal certification failure.

#include "proxcert/experiment.hpp"
#include "proxcert/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>

namespace {

using namespace proxcert;
using ordered_json = nlohmann::ordered_json;

SolveLimits limits_from_env() {
    SolveLimits limits;
    if (const char* cap = std::getenv("PROXCERT_CAP")) {
        long long v = std::strtoll(cap, nullptr, 10);
        if (v > 0) {
            limits.caps.minor_cap = v;
            limits.caps.node_cap = v;
        }
    }
    return limits;
}

std::string bound_repr(const BoundTerm& b) {
    if (auto ex = b.exact()) return rat_to_string(*ex);
    std::ostringstream os;
    os.precision(12);
    os << b.approx_double();
    return os.str();
}

ordered_json check_to_json(const BoundCheckRecord& rec) {
    ordered_json j;
    j["bound"] = rec.name;
    j["measured"] = rat_to_string(rec.measured);
    j["value"] = bound_repr(rec.bound);
    j["strict"] = rec.strict;
    j["pass"] = rec.outcome.pass;
    j["method"] = to_string(rec.outcome.method);
    return j;
}

ordered_json ledger_to_json(const BoundLedger& ledger) {
    ordered_json arr = ordered_json::array();
    for (const auto& e : ledger.entries) {
        ordered_json j;
        j["name"] = e.name;
        j["norm"] = e.norm;
        j["value"] = bound_repr(e.bound);
        arr.push_back(std::move(j));
    }
    return arr;
}

void print_checks(std::ostream& os, const std::string& title,
                  const std::vector<BoundCheckRecord>& checks) {
    if (checks.empty()) return;
    os << title << "\n";
    for (const auto& rec : checks) {
        os << "  " << (rec.outcome.pass ? "PASS " : "FAIL ") << rec.name << ": "
           << rat_to_string(rec.measured) << (rec.strict ? " < " : " <= ")
           << bound_repr(rec.bound) << "  [" << to_string(rec.outcome.method) << "]\n";
    }
}

int cmd_analyze(const std::string& path, const std::string& format, const SolveLimits& limits) {
    AnyInstance any = parse_instance_file(path);
    if (any.form == "general") {
        const GeneralInstance& g = *any.general;
        auto dg = delta_general(g.a, g.b, g.c_mat, limits.caps);
        BoundTerm cor7 = bound_cor7(g.m(), g.n(), g.t(), g.d(), dg.delta);
        if (format == "json") {
            ordered_json j;
            j["form"] = "general";
            j["delta"] = dg.delta.str();
            j["cor7"] = bound_repr(cor7);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "general form: m=" << g.m() << " n=" << g.n() << " t=" << g.t()
                      << " d=" << g.d() << "\n";
            std::cout << "delta = " << dg.delta.str() << "\n";
            std::cout << "cor7 bound = " << bound_repr(cor7) << "\n";
        }
        return 0;
    }

    MipInstance inst = any.as_mip();
    AssumptionReport rep = check_assumptions(inst.base, limits);
    DeltaReport dr = delta_report(inst.base.a, limits.caps);
    Int gram = det(inst.base.a * inst.base.a.transpose());
    // The ledger needs S; report it when the instance is solvable.
    long s = -1;
    if (rep.all_hold()) {
        IpResult ip = mip_solve(inst, limits);
        if (ip.status == SolveStatus::Optimal)
            s = static_cast<long>(min_support(inst, ip.solution->objective, limits)
                                      .support_set.size());
    }
    BoundLedger ledger = make_standard_ledger(inst.base.m(), inst.base.n(), dr.delta_k,
                                              dr.delta, dr.entry_norm, std::max(0L, s), gram);

    if (format == "json") {
        ordered_json j;
        j["form"] = any.form;
        j["m"] = inst.base.m();
        j["n"] = inst.base.n();
        ordered_json dk = ordered_json::array();
        for (const Int& v : dr.delta_k) dk.push_back(v.str());
        j["delta_k"] = std::move(dk);
        j["delta"] = dr.delta.str();
        j["entry_norm"] = dr.entry_norm.str();
        j["gram_det"] = gram.str();
        if (s >= 0) j["min_support"] = s;
        j["assumptions"] = {{"rank_ok", rep.rank_ok},
                            {"lp_feasible", rep.lp_feasible},
                            {"lp_bounded", rep.lp_bounded},
                            {"ip_feasible", rep.ip_feasible}};
        j["bounds"] = ledger_to_json(ledger);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "instance: m=" << inst.base.m() << " n=" << inst.base.n() << " form="
                  << any.form << "\n";
        std::cout << "delta_k =";
        for (const Int& v : dr.delta_k) std::cout << " " << v.str();
        std::cout << "\ndelta = " << dr.delta.str() << ", |A|_inf = " << dr.entry_norm.str()
                  << ", det(AA^T) = " << gram.str() << "\n";
        if (s >= 0) std::cout << "min support S = " << s << "\n";
        std::cout << "assumptions: rank " << (rep.rank_ok ? "ok" : "FAIL") << ", LP "
                  << (rep.lp_feasible ? (rep.lp_bounded ? "optimal" : "unbounded")
                                      : "infeasible")
                  << ", IP " << (rep.ip_feasible ? "feasible" : "infeasible") << "\n";
        std::cout << "bounds:\n";
        for (const auto& e : ledger.entries)
            std::cout << "  " << e.name << " (" << e.norm << ") = " << bound_repr(e.bound)
                      << "\n";
    }
    if (!rep.all_hold()) {
        std::cerr << "assumption failed: " << rep.first_failure() << "\n";
        return 2;
    }
    return 0;
}

int cmd_certify(const std::string& path, const std::string& format, bool vertex_all,
                const SolveLimits& limits) {
    AnyInstance any = parse_instance_file(path);

    if (any.form == "general") {
        GeneralCertifyOutcome oc = certify_general_instance(*any.general, limits);
        if (format == "json") {
            ordered_json j;
            j["form"] = "general";
            j["delta"] = oc.delta_gen.str();
            j["s_bar"] = oc.certificate.s_bar;
            j["repaired_distance"] = rat_to_string(oc.certificate.l1_distance);
            j["true_distance"] = rat_to_string(oc.true_distance);
            j["chain_bound"] = rat_to_string(oc.certificate.chain_bound);
            ordered_json checks = ordered_json::array();
            for (const auto& rec : oc.gated) checks.push_back(check_to_json(rec));
            j["checks"] = std::move(checks);
            j["all_pass"] = oc.all_pass;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "general certificate: delta=" << oc.delta_gen.str()
                      << " S_bar=" << oc.certificate.s_bar
                      << "\nrepaired distance = " << rat_to_string(oc.certificate.l1_distance)
                      << "\ntrue distance     = " << rat_to_string(oc.true_distance)
                      << "\nchain bound       = " << rat_to_string(oc.certificate.chain_bound)
                      << "\n";
            print_checks(std::cout, "checks:", oc.gated);
        }
        if (!oc.all_pass) {
            std::cerr << "certification failed: a bound was violated\n";
            return 4;
        }
        return 0;
    }

    MipInstance inst = any.as_mip();
    std::vector<LpVertex> vertices;
    if (vertex_all) {
        vertices = enumerate_optimal_vertices(inst.base);
    }

    CertifyOutcome oc = certify_instance(inst, limits);
    if (format == "json") {
        ordered_json j;
        j["form"] = any.form;
        j["delta"] = oc.delta_rep.delta.str();
        j["S"] = oc.minsup.support_set.size();
        j["lp_value"] = rat_to_string(oc.vertex.objective);
        j["ip_value"] = rat_to_string(oc.ip_value);
        ordered_json xs = ordered_json::array();
        for (const Rat& v : oc.vertex.x) xs.push_back(rat_to_string(v));
        j["x_star"] = std::move(xs);
        ordered_json zs = ordered_json::array();
        for (const Rat& v : oc.certificate.z_star) zs.push_back(rat_to_string(v));
        j["z_star"] = std::move(zs);
        j["repaired_distance"] = rat_to_string(oc.certificate.l1_distance);
        j["true_distance"] = rat_to_string(oc.true_distance);
        j["chain_bound"] = rat_to_string(oc.certificate.chain_bound);
        ordered_json gated = ordered_json::array();
        for (const auto& rec : oc.gated) gated.push_back(check_to_json(rec));
        j["checks"] = std::move(gated);
        ordered_json info = ordered_json::array();
        for (const auto& rec : oc.informational) info.push_back(check_to_json(rec));
        j["informational"] = std::move(info);
        j["all_pass"] = oc.all_pass;
        if (vertex_all) j["optimal_vertices"] = vertices.size();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "certificate: m=" << inst.base.m() << " n=" << inst.base.n()
                  << " delta=" << oc.delta_rep.delta.str() << " S="
                  << oc.minsup.support_set.size() << "\n";
        std::cout << "lp value = " << rat_to_string(oc.vertex.objective)
                  << ", ip value = " << rat_to_string(oc.ip_value) << "\n";
        std::cout << "repaired distance = " << rat_to_string(oc.certificate.l1_distance)
                  << "\ntrue distance     = " << rat_to_string(oc.true_distance)
                  << "\nchain bound (m+1)|H|delta = " << rat_to_string(oc.certificate.chain_bound)
                  << "\n";
        print_checks(std::cout, "gated checks (true distance):", oc.gated);
        print_checks(std::cout, "informational:", oc.informational);
        if (vertex_all) std::cout << "optimal vertices: " << vertices.size() << "\n";
    }

    if (vertex_all && vertices.size() > 1) {
        // Certify the remaining optimal vertices too.
        for (const auto& v : vertices) {
            if (v.x == oc.vertex.x) continue;
            ProximityCertificate extra = repair(inst, v, oc.minsup.solution.z, oc.ip_value,
                                                oc.delta_rep, limits.caps);
            std::cout << "vertex " << rat_to_string(v.objective) << " basis certificate: "
                      << rat_to_string(extra.l1_distance) << " < "
                      << rat_to_string(extra.chain_bound) << "\n";
        }
    }

    if (!oc.all_pass) {
        for (const auto& rec : oc.gated)
            if (!rec.outcome.pass)
                std::cerr << "certification failed: bound " << rec.name << " violated\n";
        return 4;
    }
    return 0;
}

int cmd_transform(const std::string& path, const std::string& epsilon_str,
                  const std::string& out_path, const std::string& format,
                  const SolveLimits& limits) {
    AnyInstance any = parse_instance_file(path);
    const StandardInstance& inst = any.as_standard();
    Rat epsilon = epsilon_str.empty() ? Rat(1, inst.m()) : parse_rat_string(epsilon_str);

    UipResult r = uip_pipeline(inst, epsilon, limits);
    if (!out_path.empty()) {
        AnyInstance t;
        t.form = "standard";
        t.standard = r.transformed;
        t.metadata["generator"] = "transform";
        t.metadata["source"] = path;
        write_instance_file(t, out_path);
    }

    if (format == "json") {
        ordered_json j;
        ordered_json cols = ordered_json::array();
        for (int c : r.maxdet.column_set) cols.push_back(c + 1);
        j["column_set"] = std::move(cols);
        j["abs_det"] = r.maxdet.abs_det.str();
        j["swaps"] = r.maxdet.swaps_performed;
        j["ub_norm"] = r.ub_norm.str();
        ordered_json diag = ordered_json::array();
        for (const Int& v : r.hnf.diagonal) diag.push_back(v.str());
        j["hnf_diagonal"] = std::move(diag);
        j["det_chain"] = bound_repr(r.det_chain);
        j["norm_chain"] = bound_repr(r.norm_chain);
        j["thm2_bound"] = bound_repr(r.thm2_bound);
        j["hnf_known_bound"] = bound_repr(r.hnf_known_bound);
        j["true_proximity"] = rat_to_string(r.true_proximity);
        j["thm2_pass"] = r.thm2_outcome.pass;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "max-det columns:";
        for (int c : r.maxdet.column_set) std::cout << " " << (c + 1);
        std::cout << " (|det| = " << r.maxdet.abs_det.str() << ", swaps "
                  << r.maxdet.swaps_performed << ")\n";
        std::cout << "HNF diagonal:";
        for (const Int& v : r.hnf.diagonal) std::cout << " " << v.str();
        std::cout << ", |UB|_inf = " << r.ub_norm.str() << "\n";
        std::cout << "delta <= |det B| (2 log2(m+1))^{m/2} = " << bound_repr(r.det_chain)
                  << ": " << (r.det_chain_outcome.pass ? "ok" : "FAIL") << "\n";
        std::cout << "delta <= |UB|^m (2 log2(m+1))^{m/2} = " << bound_repr(r.norm_chain)
                  << ": " << (r.norm_chain_outcome.pass ? "ok" : "FAIL") << "\n";
        std::cout << "thm2 bound = " << bound_repr(r.thm2_bound) << ", true proximity = "
                  << rat_to_string(r.true_proximity) << " ("
                  << (r.thm2_outcome.pass ? "PASS" : "FAIL") << ")\n";
        if (!out_path.empty()) std::cout << "transformed instance written to " << out_path << "\n";
    }
    return r.thm2_outcome.pass ? 0 : 4;
}

int cmd_generate(uint64_t seed, const std::string& form, int m, int n, int t, int d,
                 long entry_bound, const std::string& out_path) {
    AnyInstance any;
    any.form = form;
    any.metadata["seed"] = std::to_string(seed);
    any.metadata["generator"] = "gen_random";
    if (form == "standard") {
        any.standard = gen_random(seed, m, n, entry_bound);
    } else if (form == "mip") {
        any.mip = gen_random_mip(seed, m, n, entry_bound);
    } else if (form == "general") {
        any.general = gen_random_general(seed, m, n, t, d, entry_bound);
    } else if (form == "nonvertex") {
        NonVertexDemo demo = gen_nonvertex_demo(n);
        any.form = "standard";
        any.standard = demo.instance;
        any.metadata["generator"] = "gen_nonvertex_demo";
        std::ostringstream pt;
        for (size_t i = 0; i < demo.point.size(); ++i)
            pt << (i ? " " : "") << rat_to_string(demo.point[i]);
        any.metadata["point"] = pt.str();
    } else {
        throw ValidationError("unknown form '" + form + "'");
    }
    std::string text = serialize_instance(any);
    if (out_path.empty()) std::cout << text;
    else write_instance_file(any, out_path);
    return 0;
}

int cmd_frontier(uint64_t seed, int m, int n, long entry_bound, int budget, int keep,
                 const SolveLimits& limits) {
    FrontierResult fr = frontier_search(seed, m, n, entry_bound, budget, keep, limits);
    std::cout << "rank,seed,delta,distance,ratio_delta,ratio_entry\n";
    int rank_i = 1;
    for (const auto& row : fr.rows) {
        std::cout << rank_i++ << "," << row.seed << "," << row.delta.str() << ","
                  << rat_to_string(row.distance) << "," << rat_to_decimal(row.ratio_delta, 4)
                  << "," << rat_to_decimal(row.ratio_entry, 4) << "\n";
    }
    return 0;
}

int cmd_experiment(const std::string& config_path, int jobs_override) {
    ExperimentConfig cfg = parse_experiment_config_file(config_path);
    if (jobs_override > 0) cfg.jobs = jobs_override;
    ExperimentResult res = run_experiment(cfg);
    if (cfg.csv_path.empty()) std::cout << res.csv;
    std::cerr << "instances: " << res.rows.size() << ", errors: " << res.errors
              << ", violations: " << res.violations << "\n";
    // Per-row failures do not abort the batch; only config errors do.
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"proximity/sparsity bound certification for integer programs"};
    app.require_subcommand(1);

    std::string file, format = "human", epsilon, out_path, config_path;
    bool vertex_all = false;
    uint64_t seed = 1;
    std::string gen_form = "standard";
    int m = 1, n = 2, t = 0, d = 0, budget = 100, keep = 10, jobs = 0;
    long entry_bound = 5;

    auto* analyze = app.add_subcommand("analyze", "minor analytics, bounds and assumptions");
    analyze->add_option("file", file)->required();
    analyze->add_option("--format", format)->check(CLI::IsMember({"human", "json"}));

    auto* certify = app.add_subcommand("certify", "full proximity certification pipeline");
    certify->add_option("file", file)->required();
    certify->add_option("--format", format)->check(CLI::IsMember({"human", "json"}));
    certify->add_flag("--vertex-all", vertex_all, "certify every optimal LP vertex");

    auto* transform = app.add_subcommand("transform", "unimodular (U-IP) pipeline");
    transform->add_option("file", file)->required();
    transform->add_option("--epsilon", epsilon, "local-search precision (rational, default 1/m)");
    transform->add_option("--out", out_path, "write the transformed instance here");
    transform->add_option("--format", format)->check(CLI::IsMember({"human", "json"}));

    auto* experiment = app.add_subcommand("experiment", "batch run from a JSON config");
    experiment->add_option("config", config_path)->required();
    experiment->add_option("--jobs", jobs, "worker threads (overrides config)");

    auto* generate = app.add_subcommand("generate", "seeded instance generator");
    generate->add_option("--seed", seed);
    generate->add_option("--form", gen_form)
        ->check(CLI::IsMember({"standard", "mip", "general", "nonvertex"}));
    generate->add_option("--m", m);
    generate->add_option("--n", n);
    generate->add_option("--t", t);
    generate->add_option("--d", d);
    generate->add_option("--entry-bound", entry_bound);
    generate->add_option("--out", out_path);

    auto* frontier = app.add_subcommand("frontier", "search for large proximity/delta ratios");
    frontier->add_option("--seed", seed);
    frontier->add_option("--m", m);
    frontier->add_option("--n", n);
    frontier->add_option("--entry-bound", entry_bound);
    frontier->add_option("--budget", budget);
    frontier->add_option("--keep", keep);

    CLI11_PARSE(app, argc, argv);
    SolveLimits limits = limits_from_env();

    try {
        if (analyze->parsed()) return cmd_analyze(file, format, limits);
        if (certify->parsed()) return cmd_certify(file, format, vertex_all, limits);
        if (transform->parsed()) return cmd_transform(file, epsilon, out_path, format, limits);
        if (experiment->parsed()) return cmd_experiment(config_path, jobs);
        if (generate->parsed()) return cmd_generate(seed, gen_form, m, n, t, d, entry_bound, out_path);
        if (frontier->parsed()) return cmd_frontier(seed, m, n, entry_bound, budget, keep, limits);
    } catch (const CertificationError& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return 4;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
