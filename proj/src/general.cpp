#include "proxcert/general.hpp"

#include <algorithm>
#include <set>

namespace proxcert {

namespace {

constexpr long long kUnbounded = -1;

// Rows of the general inequality system D z <= f over the n+d variables:
// t rows of [0, C] with rhs b2, then n sign rows -e_j with rhs 0.
struct IneqSystem {
    std::vector<IntVec> rows;
    IntVec rhs;
};

IneqSystem general_inequalities(const GeneralInstance& g) {
    IneqSystem sys;
    const int n = g.n(), d = g.d();
    for (int r = 0; r < g.t(); ++r) {
        IntVec row(static_cast<size_t>(n + d), Int(0));
        for (int k = 0; k < d; ++k) row[static_cast<size_t>(n + k)] = g.c_mat(r, k);
        sys.rows.push_back(std::move(row));
        sys.rhs.push_back(g.b2[static_cast<size_t>(r)]);
    }
    for (int j = 0; j < n; ++j) {
        IntVec row(static_cast<size_t>(n + d), Int(0));
        row[static_cast<size_t>(j)] = -1;
        sys.rows.push_back(std::move(row));
        sys.rhs.push_back(Int(0));
    }
    return sys;
}

Rat dot(const IntVec& a, const RatVec& x) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * x[i];
    return s;
}

void check_general_feasible(const GeneralInstance& g, const RatVec& z, bool integral,
                            const std::string& who) {
    const int n = g.n(), d = g.d();
    if (static_cast<int>(z.size()) != n + d)
        throw ValidationError(who + ": wrong dimension");
    RatVec eq = to_rat(hcat(g.a, g.b)).mul(z);
    for (int i = 0; i < g.m(); ++i)
        if (eq[static_cast<size_t>(i)] != Rat(g.b1[static_cast<size_t>(i)]))
            throw ValidationError(who + ": violates [A,B]z = b1");
    for (int r = 0; r < g.t(); ++r) {
        Rat s = 0;
        for (int k = 0; k < d; ++k) s += Rat(g.c_mat(r, k)) * z[static_cast<size_t>(n + k)];
        if (s > Rat(g.b2[static_cast<size_t>(r)]))
            throw ValidationError(who + ": violates [0,C]z <= b2");
    }
    for (int j = 0; j < n; ++j)
        if (z[static_cast<size_t>(j)] < 0)
            throw ValidationError(who + ": sign-constrained component is negative");
    if (integral)
        for (const Rat& zi : z)
            if (!is_integer(zi)) throw ValidationError(who + ": fractional component");
}

} // namespace

RatVec GeneralToStandard::restore(const RatVec& x) const {
    RatVec z(static_cast<size_t>(n + d));
    for (int j = 0; j < n; ++j) z[static_cast<size_t>(j)] = x[static_cast<size_t>(j)];
    for (int k = 0; k < d; ++k)
        z[static_cast<size_t>(n + k)] =
            x[static_cast<size_t>(n + k)] - x[static_cast<size_t>(n + d + k)];
    return z;
}

GeneralToStandard general_to_standard(const GeneralInstance& g) {
    const int m = g.m(), n = g.n(), d = g.d(), t = g.t();
    GeneralToStandard out;
    out.n = n;
    out.d = d;
    out.t = t;

    StandardInstance& s = out.std_form;
    s.a = IntMatrix(m + t, n + 2 * d + t);
    s.b.resize(static_cast<size_t>(m + t));
    s.c.assign(static_cast<size_t>(n + 2 * d + t), Int(0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) s.a(i, j) = g.a(i, j);
        for (int k = 0; k < d; ++k) {
            s.a(i, n + k) = g.b(i, k);
            s.a(i, n + d + k) = -g.b(i, k);
        }
        s.b[static_cast<size_t>(i)] = g.b1[static_cast<size_t>(i)];
    }
    for (int r = 0; r < t; ++r) {
        for (int k = 0; k < d; ++k) {
            s.a(m + r, n + k) = g.c_mat(r, k);
            s.a(m + r, n + d + k) = -g.c_mat(r, k);
        }
        s.a(m + r, n + 2 * d + r) = 1;
        s.b[static_cast<size_t>(m + r)] = g.b2[static_cast<size_t>(r)];
    }
    for (int j = 0; j < n; ++j) s.c[static_cast<size_t>(j)] = g.c[static_cast<size_t>(j)];
    for (int k = 0; k < d; ++k) {
        s.c[static_cast<size_t>(n + k)] = g.c[static_cast<size_t>(n + k)];
        s.c[static_cast<size_t>(n + d + k)] = -g.c[static_cast<size_t>(n + k)];
    }
    return out;
}

RatVec purify_vertex_general(const GeneralInstance& g, RatVec x) {
    const int n = g.n(), d = g.d(), dim = n + d;
    IneqSystem sys = general_inequalities(g);
    RatMatrix eq = to_rat(hcat(g.a, g.b));

    for (int round = 0; round <= dim; ++round) {
        std::vector<int> active;
        for (size_t r = 0; r < sys.rows.size(); ++r)
            if (dot(sys.rows[r], x) == Rat(sys.rhs[r])) active.push_back(static_cast<int>(r));

        RatMatrix m_act(g.m() + static_cast<int>(active.size()), dim);
        for (int i = 0; i < g.m(); ++i)
            for (int j = 0; j < dim; ++j) m_act(i, j) = eq(i, j);
        for (size_t i = 0; i < active.size(); ++i)
            for (int j = 0; j < dim; ++j)
                m_act(g.m() + static_cast<int>(i), j) =
                    Rat(sys.rows[static_cast<size_t>(active[i])][static_cast<size_t>(j)]);
        auto u_opt = kernel_vector(m_act);
        if (!u_opt) return x;  // active rank == dim: a vertex

        RatVec u = *u_opt;
        Rat cu = 0;
        for (int j = 0; j < dim; ++j) cu += Rat(g.c[static_cast<size_t>(j)]) * u[static_cast<size_t>(j)];
        if (cu != 0)
            throw CertificationError("purify_vertex_general: optimal face direction moves the objective");

        // Largest steps along +u / -u before an inactive row tightens.
        auto max_step = [&](int sigma) -> std::optional<Rat> {
            std::optional<Rat> theta;
            for (size_t r = 0; r < sys.rows.size(); ++r) {
                Rat gu = dot(sys.rows[r], u) * sigma;
                if (gu <= 0) continue;
                Rat slack = Rat(sys.rhs[r]) - dot(sys.rows[r], x);
                Rat bound = slack / gu;
                if (!theta || bound < *theta) theta = bound;
            }
            return theta;
        };
        std::optional<Rat> tp = max_step(+1), tm = max_step(-1);
        if (!tp && !tm)
            throw ValidationError("purify_vertex_general: feasible region contains a line");
        int sigma = tp ? +1 : -1;
        Rat theta = tp ? *tp : *tm;
        for (int j = 0; j < dim; ++j) x[static_cast<size_t>(j)] += Rat(sigma) * theta * u[static_cast<size_t>(j)];
    }
    throw CertificationError("purify_vertex_general: crossover failed to reach a vertex");
}

namespace {

// Standard-form solve that tolerates dependent rows by reducing first.
IpResult solve_standard_reduced(const StandardInstance& s, const SolveLimits& limits) {
    ReducedSystem rs = reduce_to_full_row_rank(s.a, s.b);
    if (!rs.consistent) {
        IpResult r;
        r.status = SolveStatus::Infeasible;
        return r;
    }
    if (rs.a.rows() == 0) {
        // Vacuous constraints: optimum is 0 iff no positive cost survives.
        IpResult r;
        for (const Int& cj : s.c)
            if (cj > 0) { r.status = SolveStatus::Unbounded; return r; }
        r.status = SolveStatus::Optimal;
        IpSolution sol;
        sol.z.assign(s.c.size(), Rat(0));
        sol.objective = 0;
        r.solution = sol;
        return r;
    }
    StandardInstance red;
    red.a = rs.a;
    red.b = rs.b;
    red.c = s.c;
    return ip_solve(red, limits);
}

} // namespace

GeneralSolve solve_general(const GeneralInstance& g, const SolveLimits& limits) {
    g.validate();
    if (rank(vcat(g.b, g.c_mat)) != g.d())
        throw ValidationError("(GLP) is not pointed: rank([B;C]) < d");

    GeneralToStandard map = general_to_standard(g);
    GeneralSolve out;

    LpResult lp = lp_solve(map.std_form);
    out.lp_status = lp.status;
    if (lp.status != SolveStatus::Optimal) return out;
    out.x_star = purify_vertex_general(g, map.restore(lp.vertex->x));
    out.lp_value = lp.vertex->objective;
    check_general_feasible(g, out.x_star, /*integral=*/false, "solve_general x*");

    IpResult ip = ip_solve(map.std_form, limits);
    out.ip_status = ip.status;
    if (ip.status != SolveStatus::Optimal) return out;
    out.z_star = map.restore(ip.solution->z);
    out.ip_value = ip.solution->objective;
    check_general_feasible(g, out.z_star, /*integral=*/true, "solve_general z*");
    return out;
}

RatVec min_support_general(const GeneralInstance& g, const Rat& optimal_value,
                           const SolveLimits& limits) {
    const int n = g.n(), d = g.d();
    for (int s = 0; s <= n; ++s) {
        std::optional<RatVec> hit;
        for_each_subset(n, s, [&](const std::vector<int>& cols) {
            GeneralInstance sub = g;
            sub.a = g.a.select_cols(cols);
            sub.c.clear();
            for (int j : cols) sub.c.push_back(g.c[static_cast<size_t>(j)]);
            for (int k = 0; k < d; ++k) sub.c.push_back(g.c[static_cast<size_t>(n + k)]);

            GeneralToStandard map = general_to_standard(sub);
            IpResult r = solve_standard_reduced(map.std_form, limits);
            if (r.status != SolveStatus::Optimal || r.solution->objective != optimal_value)
                return true;

            RatVec z_sub = map.restore(r.solution->z);
            RatVec z(static_cast<size_t>(n + d), Rat(0));
            for (size_t i = 0; i < cols.size(); ++i)
                z[static_cast<size_t>(cols[i])] = z_sub[i];
            for (int k = 0; k < d; ++k)
                z[static_cast<size_t>(n + k)] = z_sub[cols.size() + static_cast<size_t>(k)];
            hit = std::move(z);
            return false;
        });
        if (hit) {
            check_general_feasible(g, *hit, /*integral=*/true, "min_support_general");
            return *hit;
        }
    }
    throw ValidationError("min_support_general: no optimal solution matches the value");
}

ProximityMeasurement measure_true_proximity_general(const GeneralInstance& g,
                                                    const RatVec& x_star,
                                                    const Rat& optimal_value,
                                                    const RatVec& known,
                                                    const SolveLimits& limits) {
    const int m = g.m(), n = g.n(), d = g.d(), t = g.t();
    const int dim = n + d;
    ProximityMeasurement out;
    out.nearest = known;
    RatVec diff(static_cast<size_t>(dim));
    for (int j = 0; j < dim; ++j)
        diff[static_cast<size_t>(j)] = known[static_cast<size_t>(j)] - x_star[static_cast<size_t>(j)];
    Rat radius = l1_norm(diff);
    if (radius == 0) {
        out.distance = radius;
        return out;
    }

    // Variables: z_n (n) | p (d) | q (d) | slack (t) | t-vars (dim) |
    // s1 (dim) | s2 (dim); integrality on z_n, p, q.
    const int base = n + 2 * d + t;
    const int cols = base + 3 * dim;
    const int rows = m + t + 1 + 2 * dim;
    IntMatrix a(rows, cols);
    IntVec rhs(static_cast<size_t>(rows));

    GeneralToStandard map = general_to_standard(g);
    for (int i = 0; i < m + t; ++i) {
        for (int j = 0; j < base; ++j) a(i, j) = map.std_form.a(i, j);
        rhs[static_cast<size_t>(i)] = map.std_form.b[static_cast<size_t>(i)];
    }
    {
        Int qv = denominator(optimal_value);
        for (int j = 0; j < base; ++j)
            a(m + t, j) = qv * map.std_form.c[static_cast<size_t>(j)];
        rhs[static_cast<size_t>(m + t)] = numerator(optimal_value);
    }
    // t_j >= |z_j - x*_j| with z_j = x_j (j < n) or p_k - q_k.
    for (int j = 0; j < dim; ++j) {
        Int qx = denominator(x_star[static_cast<size_t>(j)]);
        Int px = numerator(x_star[static_cast<size_t>(j)]);
        int r1 = m + t + 1 + 2 * j, r2 = r1 + 1;
        auto put_z = [&](int row, const Int& coef) {
            if (j < n) {
                a(row, j) = coef;
            } else {
                a(row, n + (j - n)) = coef;
                a(row, n + d + (j - n)) = -coef;
            }
        };
        put_z(r1, -qx);
        a(r1, base + j) = qx;
        a(r1, base + dim + j) = -qx;
        rhs[static_cast<size_t>(r1)] = -px;
        put_z(r2, qx);
        a(r2, base + j) = qx;
        a(r2, base + 2 * dim + j) = -qx;
        rhs[static_cast<size_t>(r2)] = px;
    }

    StandardInstance aux;
    aux.a = a;
    aux.b = rhs;
    aux.c.assign(static_cast<size_t>(cols), Int(0));
    for (int j = 0; j < dim; ++j) aux.c[static_cast<size_t>(base + j)] = -1;

    // Branch on the integral coordinates; box them by the distance clip.
    // The split parts are boxed against the normalized representation
    // p = max(z, 0), q = max(-z, 0) of some nearest optimal solution.
    IntVec lb(static_cast<size_t>(cols), Int(0));
    IntVec ub(static_cast<size_t>(cols), Int(kUnbounded));
    std::vector<int> branch;
    for (int j = 0; j < n; ++j) {
        branch.push_back(j);
        ub[static_cast<size_t>(j)] = rat_floor(x_star[static_cast<size_t>(j)] + radius);
    }
    for (int k = 0; k < d; ++k) {
        const Rat& xk = x_star[static_cast<size_t>(n + k)];
        Int hi = rat_ceil(rat_abs(xk) + radius);
        branch.push_back(n + k);
        ub[static_cast<size_t>(n + k)] = hi;
        branch.push_back(n + d + k);
        ub[static_cast<size_t>(n + d + k)] = hi;
    }

    IpResult r = solve_boxed_mip(aux, branch, lb, ub, limits);
    if (r.status != SolveStatus::Optimal)
        throw CertificationError("measure_true_proximity_general: auxiliary solve failed: " +
                                 to_string(r.status));
    out.distance = -r.solution->objective;
    out.nearest.assign(static_cast<size_t>(dim), Rat(0));
    for (int j = 0; j < n; ++j) out.nearest[static_cast<size_t>(j)] = r.solution->z[static_cast<size_t>(j)];
    for (int k = 0; k < d; ++k)
        out.nearest[static_cast<size_t>(n + k)] = r.solution->z[static_cast<size_t>(n + k)] -
                                                  r.solution->z[static_cast<size_t>(n + d + k)];
    return out;
}

GeneralCertificate repair_general(const GeneralInstance& g, const RatVec& x_star,
                                  const RatVec& z_star, const Rat& ip_value,
                                  const Int& delta_gen, const EnumerationCaps& caps) {
    const int m = g.m(), n = g.n(), d = g.d(), t = g.t();
    const int dim = n + d;
    check_general_feasible(g, x_star, /*integral=*/false, "repair_general x*");
    check_general_feasible(g, z_star, /*integral=*/true, "repair_general z*");
    Rat cz = 0;
    for (int j = 0; j < dim; ++j) cz += Rat(g.c[static_cast<size_t>(j)]) * z_star[static_cast<size_t>(j)];
    if (cz != ip_value)
        throw ValidationError("repair_general: z* is not optimal for the given value");

    GeneralCertificate cert;
    cert.x_star = x_star;
    cert.delta_gen = delta_gen;

    if (x_star == z_star) {
        cert.z_star = z_star;
        cert.l1_distance = 0;
        cert.chain_bound = 0;
        cert.s_bar = static_cast<int>(support(z_star).size());
        return cert;
    }

    // Vertex precondition: n+d independent active constraints at x*.
    IneqSystem sys = general_inequalities(g);
    {
        std::vector<IntVec> act;
        for (int i = 0; i < m; ++i) {
            IntVec row(static_cast<size_t>(dim));
            for (int j = 0; j < dim; ++j)
                row[static_cast<size_t>(j)] = j < n ? g.a(i, j) : g.b(i, j - n);
            act.push_back(std::move(row));
        }
        for (size_t r = 0; r < sys.rows.size(); ++r)
            if (dot(sys.rows[r], x_star) == Rat(sys.rhs[r])) act.push_back(sys.rows[r]);
        IntMatrix ma(static_cast<int>(act.size()), dim);
        for (size_t i = 0; i < act.size(); ++i)
            for (int j = 0; j < dim; ++j) ma(static_cast<int>(i), j) = act[i][static_cast<size_t>(j)];
        if (rank(ma) != dim)
            throw ValidationError("repair_general: x* is not a vertex of (GLP)");
    }

    // Union support and the projected, b3-padded system.
    std::set<int> hset;
    for (int j : support(x_star)) hset.insert(j);
    for (int j : support(z_star)) hset.insert(j);
    std::vector<int> h(hset.begin(), hset.end());
    const int hs = static_cast<int>(h.size());
    cert.h_set = h;
    cert.s_bar = hs;

    Int b3val = rat_ceil(linf_norm(x_star));
    {
        RatVec zr = z_star;
        b3val += rat_ceil(linf_norm(zr));
    }

    // D rows over the projected coordinates with their rhs: C rows, sign
    // rows for projected n-part, box rows for projected d-part.
    std::vector<IntVec> d_rows;
    IntVec d_rhs;
    for (int r = 0; r < t; ++r) {
        IntVec row(static_cast<size_t>(hs), Int(0));
        for (int p = 0; p < hs; ++p) {
            int col = h[static_cast<size_t>(p)];
            if (col >= n) row[static_cast<size_t>(p)] = g.c_mat(r, col - n);
        }
        d_rows.push_back(std::move(row));
        d_rhs.push_back(g.b2[static_cast<size_t>(r)]);
    }
    for (int p = 0; p < hs; ++p) {
        int col = h[static_cast<size_t>(p)];
        IntVec row(static_cast<size_t>(hs), Int(0));
        if (col < n) {
            row[static_cast<size_t>(p)] = -1;
            d_rows.push_back(std::move(row));
            d_rhs.push_back(Int(0));
        } else {
            row[static_cast<size_t>(p)] = 1;
            d_rows.push_back(std::move(row));
            d_rhs.push_back(b3val);
        }
    }

    ConeSpec cone;
    cone.support = h;
    cone.eq = IntMatrix(m, hs);
    for (int i = 0; i < m; ++i)
        for (int p = 0; p < hs; ++p) {
            int col = h[static_cast<size_t>(p)];
            cone.eq(i, p) = col < n ? g.a(i, col) : g.b(i, col - n);
        }
    cone.ineq = IntMatrix(static_cast<int>(d_rows.size()), hs);
    RatVec xh(static_cast<size_t>(hs)), zh(static_cast<size_t>(hs));
    for (int p = 0; p < hs; ++p) {
        xh[static_cast<size_t>(p)] = x_star[static_cast<size_t>(h[static_cast<size_t>(p)])];
        zh[static_cast<size_t>(p)] = z_star[static_cast<size_t>(h[static_cast<size_t>(p)])];
    }
    for (size_t r = 0; r < d_rows.size(); ++r) {
        Rat gz = 0, gx = 0;
        for (int p = 0; p < hs; ++p) {
            gz += Rat(d_rows[r][static_cast<size_t>(p)]) * zh[static_cast<size_t>(p)];
            gx += Rat(d_rows[r][static_cast<size_t>(p)]) * xh[static_cast<size_t>(p)];
        }
        // D1 (g z* < g x*): cone needs g u <= 0, stored as -g >= 0.
        int sign = gz < gx ? -1 : 1;
        if (sign < 0) cone.d1_rows.push_back(static_cast<int>(r));
        else cone.d2_rows.push_back(static_cast<int>(r));
        for (int p = 0; p < hs; ++p)
            cone.ineq(static_cast<int>(r), p) = Int(sign) * d_rows[r][static_cast<size_t>(p)];
    }

    cert.rays = enumerate_rays(cone, caps);
    const int supp_cap = std::min(m + t + 1, dim);
    for (const Ray& ray : cert.rays) {
        if (ray.support_size > supp_cap)
            throw CertificationError("repair_general: ray support exceeds min{m+t+1, n+d}");
        if (linf_norm(ray.u) > delta_gen)
            throw CertificationError("repair_general: primitive ray exceeds delta");
    }

    RatVec target(static_cast<size_t>(hs));
    for (int p = 0; p < hs; ++p)
        target[static_cast<size_t>(p)] = zh[static_cast<size_t>(p)] - xh[static_cast<size_t>(p)];
    cert.decomposition = decompose(target, cert.rays);

    cert.z_star.assign(static_cast<size_t>(dim), Rat(0));
    for (int p = 0; p < hs; ++p)
        cert.z_star[static_cast<size_t>(h[static_cast<size_t>(p)])] =
            zh[static_cast<size_t>(p)] - Rat(cert.decomposition.rounded[static_cast<size_t>(p)]);

    check_general_feasible(g, cert.z_star, /*integral=*/true, "repair_general repaired");
    Rat cz2 = 0;
    for (int j = 0; j < dim; ++j)
        cz2 += Rat(g.c[static_cast<size_t>(j)]) * cert.z_star[static_cast<size_t>(j)];
    if (cz2 != ip_value)
        throw CertificationError("repair_general: repaired solution changed the objective");

    // The shifted LP point x* + w must satisfy the padded system too.
    {
        RatVec x_shift = x_star;
        for (int p = 0; p < hs; ++p)
            x_shift[static_cast<size_t>(h[static_cast<size_t>(p)])] +=
                Rat(cert.decomposition.rounded[static_cast<size_t>(p)]);
        check_general_feasible(g, x_shift, /*integral=*/false, "repair_general shifted x*");
        for (int p = 0; p < hs; ++p) {
            int col = h[static_cast<size_t>(p)];
            if (col >= n && x_shift[static_cast<size_t>(col)] > Rat(b3val))
                throw CertificationError("repair_general: shifted point escapes the b3 box");
            if (col >= n && cert.z_star[static_cast<size_t>(col)] > Rat(b3val))
                throw CertificationError("repair_general: repaired point escapes the b3 box");
        }
    }

    RatVec diff2(static_cast<size_t>(dim));
    for (int j = 0; j < dim; ++j)
        diff2[static_cast<size_t>(j)] = cert.z_star[static_cast<size_t>(j)] - x_star[static_cast<size_t>(j)];
    cert.l1_distance = l1_norm(diff2);

    cert.chain_bound = Rat(Int(supp_cap) * Int(hs) * delta_gen);
    cert.chain_ok = cert.l1_distance < cert.chain_bound;
    if (!cert.chain_ok)
        throw CertificationError("repair_general: distance reached min{m+t+1,n+d} * S̄ * delta");

    BoundCheckRecord rec;
    rec.name = "cor7";
    rec.measured = cert.l1_distance;
    rec.bound = bound_cor7(m, n, t, d, delta_gen);
    rec.outcome = compare_bound(cert.l1_distance, rec.bound, /*strict=*/true);
    cert.checks.push_back(rec);
    cert.all_pass = rec.outcome.pass;
    return cert;
}

} // namespace proxcert
