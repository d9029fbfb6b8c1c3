#include "proxcert/instance_io.hpp"

#include "proxcert/general.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace proxcert {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

Int json_to_int(const json& j, const std::string& field) {
    if (j.is_string()) return parse_int_string(j.get<std::string>());
    if (j.is_number_integer()) return Int(j.get<long long>());
    throw ParseError("field '" + field + "': expected a decimal-string or integer");
}

IntVec json_to_vec(const json& j, const std::string& field) {
    if (!j.is_array()) throw ParseError("field '" + field + "': expected an array");
    IntVec v;
    for (const auto& e : j) v.push_back(json_to_int(e, field));
    return v;
}

IntMatrix json_to_matrix(const json& j, int rows, int cols, const std::string& field) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw ParseError("field '" + field + "': expected " + std::to_string(rows) + " rows");
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const auto& r = j[static_cast<size_t>(i)];
        if (!r.is_array() || static_cast<int>(r.size()) != cols)
            throw ParseError("field '" + field + "', row " + std::to_string(i) +
                             ": expected " + std::to_string(cols) + " entries");
        for (int k = 0; k < cols; ++k)
            m(i, k) = json_to_int(r[static_cast<size_t>(k)], field);
    }
    return m;
}

const json& require(const json& j, const std::string& field) {
    auto it = j.find(field);
    if (it == j.end()) throw ParseError("missing field '" + field + "'");
    return *it;
}

ordered_json vec_to_json(const IntVec& v) {
    ordered_json a = ordered_json::array();
    for (const Int& x : v) a.push_back(x.str());
    return a;
}

ordered_json matrix_to_json(const IntMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        ordered_json r = ordered_json::array();
        for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace

const StandardInstance& AnyInstance::as_standard() const {
    if (standard) return *standard;
    if (mip) return mip->base;
    throw ValidationError("instance is not in standard or mip form");
}

MipInstance AnyInstance::as_mip() const {
    if (mip) return *mip;
    if (standard) {
        MipInstance m;
        m.base = *standard;
        for (int j = 0; j < standard->n(); ++j) m.integral_indices.insert(j);
        return m;
    }
    throw ValidationError("instance is not in standard or mip form");
}

AnyInstance parse_instance_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("instance file must be a JSON object");
    Int sv = json_to_int(require(j, "schema_version"), "schema_version");
    if (sv != 1) throw ParseError("unsupported schema_version " + sv.str());

    AnyInstance out;
    out.form = require(j, "form").get<std::string>();

    if (auto it = j.find("metadata"); it != j.end()) {
        for (const auto& [k, v] : it->items())
            out.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }

    int m = static_cast<int>(json_to_int(require(j, "m"), "m"));
    int n = static_cast<int>(json_to_int(require(j, "n"), "n"));

    if (out.form == "standard" || out.form == "mip") {
        StandardInstance s;
        s.a = json_to_matrix(require(j, "A"), m, n, "A");
        s.b = json_to_vec(require(j, "b"), "b");
        s.c = json_to_vec(require(j, "c"), "c");
        s.validate();
        if (out.form == "standard") {
            out.standard = std::move(s);
        } else {
            MipInstance mip;
            mip.base = std::move(s);
            for (const auto& e : require(j, "integral_indices")) {
                int one_based = static_cast<int>(json_to_int(e, "integral_indices"));
                mip.integral_indices.insert(one_based - 1);
            }
            mip.validate();
            out.mip = std::move(mip);
        }
    } else if (out.form == "general") {
        int t = static_cast<int>(json_to_int(require(j, "t"), "t"));
        int d = static_cast<int>(json_to_int(require(j, "d"), "d"));
        GeneralInstance g;
        g.a = json_to_matrix(require(j, "A"), m, n, "A");
        g.b = json_to_matrix(require(j, "B"), m, d, "B");
        g.c_mat = json_to_matrix(require(j, "C"), t, d, "C");
        g.b1 = json_to_vec(require(j, "b1"), "b1");
        g.b2 = json_to_vec(require(j, "b2"), "b2");
        g.c = json_to_vec(require(j, "c"), "c");
        g.validate();
        out.general = std::move(g);
    } else {
        throw ParseError("unknown form '" + out.form + "'");
    }
    return out;
}

AnyInstance parse_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance_text(ss.str());
}

std::string serialize_instance(const AnyInstance& inst) {
    ordered_json j;
    j["schema_version"] = 1;
    j["form"] = inst.form;
    if (inst.form == "standard" || inst.form == "mip") {
        const StandardInstance& s = inst.as_standard();
        j["m"] = s.m();
        j["n"] = s.n();
        j["A"] = matrix_to_json(s.a);
        j["b"] = vec_to_json(s.b);
        j["c"] = vec_to_json(s.c);
        if (inst.form == "mip") {
            ordered_json idx = ordered_json::array();
            for (int i : inst.mip->integral_indices) idx.push_back(i + 1);
            j["integral_indices"] = std::move(idx);
        }
    } else if (inst.form == "general") {
        const GeneralInstance& g = *inst.general;
        j["m"] = g.m();
        j["n"] = g.n();
        j["t"] = g.t();
        j["d"] = g.d();
        j["A"] = matrix_to_json(g.a);
        j["B"] = matrix_to_json(g.b);
        j["C"] = matrix_to_json(g.c_mat);
        j["b1"] = vec_to_json(g.b1);
        j["b2"] = vec_to_json(g.b2);
        j["c"] = vec_to_json(g.c);
    } else {
        throw ValidationError("unknown form '" + inst.form + "'");
    }
    if (!inst.metadata.empty()) {
        ordered_json meta;
        for (const auto& [k, v] : inst.metadata) meta[k] = v;
        j["metadata"] = std::move(meta);
    }
    return j.dump(2) + "\n";
}

void write_instance_file(const AnyInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << serialize_instance(inst);
}

StandardInstance gen_random(uint64_t seed, int m, int n, long entry_bound, long z0_bound) {
    if (m < 1 || n < m) throw ValidationError("gen_random: need 1 <= m <= n");
    if (entry_bound < 1) throw ValidationError("gen_random: entry_bound must be >= 1");
    Rng rng(seed);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        StandardInstance inst;
        inst.a = IntMatrix(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                inst.a(i, j) = Int(rng.uniform(-entry_bound, entry_bound));
        if (rank(inst.a) != m) continue;

        IntVec z0(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) z0[static_cast<size_t>(j)] = Int(rng.uniform(0, z0_bound));
        inst.b = inst.a.mul(z0);
        inst.c.resize(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j)
            inst.c[static_cast<size_t>(j)] = Int(rng.uniform(-entry_bound, entry_bound));

        if (lp_solve(inst).status != SolveStatus::Optimal) continue;
        return inst;
    }
    throw ResourceError("gen_random: resampling attempt cap exhausted");
}

MipInstance gen_random_mip(uint64_t seed, int m, int n, long entry_bound, long z0_bound) {
    MipInstance inst;
    inst.base = gen_random(seed, m, n, entry_bound, z0_bound);
    Rng rng(seed ^ 0xa5a5a5a5a5a5a5a5ULL);
    for (int j = 0; j < n; ++j)
        if (rng.uniform(0, 1) == 1) inst.integral_indices.insert(j);
    return inst;
}

GeneralInstance gen_random_general(uint64_t seed, int m, int n, int t, int d,
                                   long entry_bound, long z0_bound) {
    Rng rng(seed);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        GeneralInstance g;
        g.a = IntMatrix(m, n);
        g.b = IntMatrix(m, d);
        g.c_mat = IntMatrix(t, d);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) g.a(i, j) = Int(rng.uniform(-entry_bound, entry_bound));
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < d; ++k) g.b(i, k) = Int(rng.uniform(-entry_bound, entry_bound));
        for (int r = 0; r < t; ++r)
            for (int k = 0; k < d; ++k) g.c_mat(r, k) = Int(rng.uniform(-entry_bound, entry_bound));
        if (m > 0 && rank(hcat(g.a, g.b)) != m) continue;
        if (d > 0 && rank(vcat(g.b, g.c_mat)) != d) continue;

        RatVec z0(static_cast<size_t>(n + d));
        for (int j = 0; j < n; ++j) z0[static_cast<size_t>(j)] = Rat(rng.uniform(0, z0_bound));
        for (int k = 0; k < d; ++k)
            z0[static_cast<size_t>(n + k)] = Rat(rng.uniform(-z0_bound, z0_bound));

        g.b1.resize(static_cast<size_t>(m));
        RatVec eq = to_rat(hcat(g.a, g.b)).mul(z0);
        for (int i = 0; i < m; ++i) g.b1[static_cast<size_t>(i)] = numerator(eq[static_cast<size_t>(i)]);
        g.b2.resize(static_cast<size_t>(t));
        for (int r = 0; r < t; ++r) {
            Rat s = 0;
            for (int k = 0; k < d; ++k) s += Rat(g.c_mat(r, k)) * z0[static_cast<size_t>(n + k)];
            g.b2[static_cast<size_t>(r)] = numerator(s) + Int(rng.uniform(0, 3));
        }
        g.c.resize(static_cast<size_t>(n + d));
        for (int j = 0; j < n + d; ++j)
            g.c[static_cast<size_t>(j)] = Int(rng.uniform(-entry_bound, entry_bound));

        GeneralToStandard map = general_to_standard(g);
        if (lp_solve(map.std_form).status != SolveStatus::Optimal) continue;
        return g;
    }
    throw ResourceError("gen_random_general: resampling attempt cap exhausted");
}

NonVertexDemo gen_nonvertex_demo(int n) {
    if (n < 2) throw ValidationError("gen_nonvertex_demo: need n >= 2");
    NonVertexDemo demo;
    demo.instance.a = IntMatrix(1, n);
    // Alternating +-1 row; odd n swaps the last entry for 2 so that the
    // all-halves point still has an integer right-hand side.
    for (int j = 0; j < n; ++j) demo.instance.a(0, j) = (j % 2 == 0) ? 1 : -1;
    if (n % 2 == 1) demo.instance.a(0, n - 1) = 2;

    demo.point.assign(static_cast<size_t>(n), Rat(1, 2));
    Rat rhs = 0;
    for (int j = 0; j < n; ++j) rhs += Rat(demo.instance.a(0, j)) / 2;
    if (!is_integer(rhs))
        throw CertificationError("gen_nonvertex_demo: right-hand side is fractional");
    demo.instance.b = {numerator(rhs)};
    demo.instance.c.assign(static_cast<size_t>(n), Int(0));
    demo.instance.validate();
    return demo;
}

FrontierResult frontier_search(uint64_t seed, int m, int n, long entry_bound,
                               int budget, int keep, const SolveLimits& limits) {
    FrontierResult out;
    for (int i = 0; i < budget; ++i) {
        uint64_t inst_seed = Rng::derive(seed, static_cast<uint64_t>(i));
        StandardInstance inst = gen_random(inst_seed, m, n, entry_bound);

        Int delta = delta_k_exact(inst.a, m, limits.caps).first;
        LpResult lp = lp_solve(inst);
        if (lp.status != SolveStatus::Optimal) continue;
        IpResult ip = ip_solve(inst, limits);
        if (ip.status != SolveStatus::Optimal) continue;
        Rat dist = measure_true_proximity(inst, lp.vertex->x, ip.solution->objective,
                                          ip.solution->integral(), limits.caps).distance;

        FrontierRow row;
        row.seed = inst_seed;
        row.instance = inst;
        row.delta = delta;
        row.distance = dist;
        row.ratio_delta = dist / Rat(delta);
        row.ratio_entry = dist / Rat(int_pow(matrix_linf_norm(inst.a),
                                             static_cast<unsigned long>(m)));
        out.rows.push_back(std::move(row));
        std::stable_sort(out.rows.begin(), out.rows.end(),
                         [](const FrontierRow& a, const FrontierRow& b) {
                             return a.ratio_delta > b.ratio_delta;
                         });
        if (static_cast<int>(out.rows.size()) > keep) out.rows.resize(static_cast<size_t>(keep));
    }
    return out;
}

} // namespace proxcert
