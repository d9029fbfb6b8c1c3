#include "proxcert/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace proxcert {

namespace {

using json = nlohmann::json;

const std::vector<std::string> kStandardBoundOrder = {
    "cook_inf", "cook_l1", "ew_entry", "ew_delta", "thm1", "lemma3", "cor6",
    "sparsity_eq7_det", "sparsity_eq7_entry", "sparsity_thm4", "sparsity_cor5"};
const std::vector<std::string> kGeneralBoundOrder = {"cor7"};

ExperimentRow run_one(const GridCell& cell, uint64_t inst_seed, const SolveLimits& limits) {
    ExperimentRow row;
    row.seed = inst_seed;
    row.form = cell.form;
    row.m = cell.m;
    row.n = cell.n;
    row.t = cell.t;
    row.d = cell.d;
    try {
        if (cell.form == "general") {
            GeneralInstance g = gen_random_general(inst_seed, cell.m, cell.n, cell.t,
                                                   cell.d, cell.entry_bound);
            GeneralCertifyOutcome oc = certify_general_instance(g, limits);
            row.delta = oc.delta_gen.str();
            row.entry_norm = "";
            row.s = oc.certificate.s_bar;
            row.distance_exact = rat_to_string(oc.true_distance);
            row.distance_decimal = rat_to_decimal(oc.true_distance);
            for (const auto& rec : oc.gated)
                row.bounds.emplace_back(rec.name, rec.bound.approx_double(), rec.outcome.pass);
        } else {
            MipInstance inst = cell.form == "mip"
                                   ? gen_random_mip(inst_seed, cell.m, cell.n, cell.entry_bound)
                                   : [&] {
                                         MipInstance mi;
                                         mi.base = gen_random(inst_seed, cell.m, cell.n,
                                                              cell.entry_bound);
                                         for (int j = 0; j < mi.base.n(); ++j)
                                             mi.integral_indices.insert(j);
                                         return mi;
                                     }();
            CertifyOutcome oc = certify_instance(inst, limits);
            row.delta = oc.delta_rep.delta.str();
            row.entry_norm = oc.delta_rep.entry_norm.str();
            row.s = static_cast<long>(oc.minsup.support_set.size());
            row.distance_exact = rat_to_string(oc.true_distance);
            row.distance_decimal = rat_to_decimal(oc.true_distance);
            row.solve_ms = oc.solve_ms;
            row.certify_ms = oc.certify_ms;

            std::map<std::string, std::pair<double, bool>> got;
            for (const auto& rec : oc.gated)
                got[rec.name] = {rec.bound.approx_double(), rec.outcome.pass};
            for (const auto& rec : oc.informational)
                got[rec.name] = {rec.bound.approx_double(), rec.outcome.pass};
            for (const auto& name : kStandardBoundOrder) {
                auto it = got.find(name);
                if (it != got.end())
                    row.bounds.emplace_back(name, it->second.first, it->second.second);
            }
        }
    } catch (const Error& e) {
        row.error = e.what();
    }
    return row;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

} // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid config JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    cfg.seed = j.value("seed", 1ULL);
    if (j.contains("jobs")) cfg.jobs = j["jobs"].get<int>();
    if (j.contains("csv")) cfg.csv_path = j["csv"].get<std::string>();
    if (j.contains("summary")) cfg.summary_path = j["summary"].get<std::string>();
    if (j.contains("caps")) {
        cfg.limits.caps.minor_cap = j["caps"].value("minor_cap", cfg.limits.caps.minor_cap);
        cfg.limits.caps.node_cap = j["caps"].value("node_cap", cfg.limits.caps.node_cap);
    }
    if (j.contains("max_nodes")) cfg.limits.max_nodes = j["max_nodes"].get<long long>();
    if (!j.contains("grid") || !j["grid"].is_array())
        throw ParseError("config: missing 'grid' array");
    for (const auto& c : j["grid"]) {
        GridCell cell;
        cell.form = c.value("form", std::string("standard"));
        if (cell.form != "standard" && cell.form != "mip" && cell.form != "general")
            throw ParseError("config: unknown form '" + cell.form + "'");
        cell.m = c.at("m").get<int>();
        cell.n = c.at("n").get<int>();
        cell.t = c.value("t", 0);
        cell.d = c.value("d", 0);
        cell.entry_bound = c.value("entry_bound", 5L);
        cell.count = c.at("count").get<int>();
        if (cell.count < 0 || cell.entry_bound < 1)
            throw ParseError("config: grid cell out of desk-scale guards");
        cfg.grid.push_back(cell);
    }
    if (cfg.jobs < 1) throw ParseError("config: jobs must be >= 1");
    return cfg;
}

ExperimentConfig parse_experiment_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment_config(ss.str());
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    struct Task {
        GridCell cell;
        uint64_t seed;
        std::string id;
    };
    std::vector<Task> tasks;
    for (size_t ci = 0; ci < config.grid.size(); ++ci) {
        const GridCell& cell = config.grid[ci];
        for (int i = 0; i < cell.count; ++i) {
            Task t;
            t.cell = cell;
            t.seed = Rng::derive(config.seed ^ (ci * 0x9e3779b9ULL), static_cast<uint64_t>(i));
            t.id = "g" + std::to_string(ci) + "i" + std::to_string(i);
            tasks.push_back(std::move(t));
        }
    }

    ExperimentResult res;
    res.rows.resize(tasks.size());
    int jobs = std::max(1, config.jobs);
    auto worker = [&](int w) {
        for (size_t i = static_cast<size_t>(w); i < tasks.size(); i += static_cast<size_t>(jobs)) {
            res.rows[i] = run_one(tasks[i].cell, tasks[i].seed, config.limits);
            res.rows[i].id = tasks[i].id;
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }

    for (const auto& row : res.rows) {
        if (!row.error.empty()) ++res.errors;
        for (const auto& [name, value, pass] : row.bounds)
            if (!pass) ++res.violations;
    }

    // CSV: stable column set; general-form rows share the schema with
    // blanks for inapplicable bounds.
    std::ostringstream csv;
    csv << "id,seed,form,m,n,t,d,delta,entry_norm,S,distance_exact,distance_decimal";
    for (const auto& name : kStandardBoundOrder) csv << "," << name << "_value," << name << "_pass";
    for (const auto& name : kGeneralBoundOrder) csv << "," << name << "_value," << name << "_pass";
    csv << ",solve_ms,certify_ms,error\n";
    for (const auto& row : res.rows) {
        csv << row.id << "," << row.seed << "," << row.form << "," << row.m << "," << row.n
            << "," << row.t << "," << row.d << "," << row.delta << "," << row.entry_norm << ","
            << (row.s < 0 ? "" : std::to_string(row.s)) << "," << csv_escape(row.distance_exact)
            << "," << row.distance_decimal;
        std::map<std::string, std::pair<double, bool>> got;
        for (const auto& [name, value, pass] : row.bounds) got[name] = {value, pass};
        auto emit = [&](const std::string& name) {
            auto it = got.find(name);
            if (it == got.end()) {
                csv << ",,";
            } else {
                std::ostringstream v;
                v.precision(12);
                v << it->second.first;
                csv << "," << v.str() << "," << (it->second.second ? "1" : "0");
            }
        };
        for (const auto& name : kStandardBoundOrder) emit(name);
        for (const auto& name : kGeneralBoundOrder) emit(name);
        csv << "," << row.solve_ms << "," << row.certify_ms << "," << csv_escape(row.error)
            << "\n";
    }
    res.csv = csv.str();

    // Markdown summary: per-bound maximum observed measured/bound ratio.
    std::ostringstream md;
    md << "# Experiment summary\n\n";
    md << "instances: " << res.rows.size() << ", errors: " << res.errors
       << ", bound violations: " << res.violations << "\n\n";
    md << "| bound | evaluated | violations | max measured/bound |\n";
    md << "|---|---|---|---|\n";
    std::vector<std::string> all_names = kStandardBoundOrder;
    all_names.insert(all_names.end(), kGeneralBoundOrder.begin(), kGeneralBoundOrder.end());
    for (const auto& name : all_names) {
        int total = 0, viol = 0;
        double max_ratio = 0;
        for (const auto& row : res.rows) {
            for (const auto& [bname, value, pass] : row.bounds) {
                if (bname != name) continue;
                ++total;
                if (!pass) ++viol;
                if (value > 0 && !row.distance_decimal.empty()) {
                    double meas = std::strtod(row.distance_decimal.c_str(), nullptr);
                    if (name.rfind("sparsity", 0) == 0) meas = static_cast<double>(row.s);
                    max_ratio = std::max(max_ratio, meas / value);
                }
            }
        }
        if (total == 0) continue;
        md << "| " << name << " | " << total << " | " << viol << " | ";
        md.precision(4);
        md << max_ratio << " |\n";
    }
    res.summary_md = md.str();

    if (!config.csv_path.empty()) {
        std::ofstream out(config.csv_path);
        if (!out) throw ParseError("cannot open '" + config.csv_path + "' for writing");
        out << res.csv;
    }
    if (!config.summary_path.empty()) {
        std::ofstream out(config.summary_path);
        if (!out) throw ParseError("cannot open '" + config.summary_path + "' for writing");
        out << res.summary_md;
    }
    return res;
}

} // namespace proxcert
