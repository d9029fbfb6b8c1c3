#include "proxcert/solvers.hpp"

#include <algorithm>
#include <functional>

namespace proxcert {

IntVec IpSolution::integral() const {
    IntVec out(z.size());
    for (size_t i = 0; i < z.size(); ++i) {
        if (!is_integer(z[i]))
            throw ValidationError("IpSolution: component is fractional");
        out[i] = numerator(z[i]);
    }
    return out;
}

namespace {

constexpr long long kUnbounded = -1;

struct Node {
    IntVec lb;
    IntVec ub;  // -1 encodes "no upper bound"
};

struct NodeLp {
    bool feasible = false;
    RatVec z;
    Rat objective;
};

// Solves the LP relaxation on the node box exactly. Variables are
// shifted by lb; finite upper bounds become slack rows. Fixed variables
// (lb == ub) are substituted out.
NodeLp solve_node(const StandardInstance& inst, const Node& nd) {
    const int m = inst.m(), n = inst.n();
    std::vector<int> free_vars;
    std::vector<int> bounded;  // indices into free_vars order with finite ub
    for (int j = 0; j < n; ++j) {
        const Int& u = nd.ub[static_cast<size_t>(j)];
        if (u >= 0 && u == nd.lb[static_cast<size_t>(j)]) continue;
        free_vars.push_back(j);
        if (u >= 0) bounded.push_back(j);
    }

    const int nf = static_cast<int>(free_vars.size());
    const int nb = static_cast<int>(bounded.size());
    RatMatrix a(m + nb, nf + nb);
    RatVec rhs(static_cast<size_t>(m + nb));
    RatVec cost(static_cast<size_t>(nf + nb), Rat(0));

    for (int i = 0; i < m; ++i) {
        Rat r = Rat(inst.b[static_cast<size_t>(i)]);
        for (int j = 0; j < n; ++j)
            r -= Rat(inst.a(i, j) * nd.lb[static_cast<size_t>(j)]);
        rhs[static_cast<size_t>(i)] = r;
        for (int jf = 0; jf < nf; ++jf)
            a(i, jf) = Rat(inst.a(i, free_vars[static_cast<size_t>(jf)]));
    }
    for (int k = 0; k < nb; ++k) {
        int j = bounded[static_cast<size_t>(k)];
        int jf = static_cast<int>(std::find(free_vars.begin(), free_vars.end(), j) -
                                  free_vars.begin());
        a(m + k, jf) = 1;
        a(m + k, nf + k) = 1;
        rhs[static_cast<size_t>(m + k)] =
            Rat(nd.ub[static_cast<size_t>(j)] - nd.lb[static_cast<size_t>(j)]);
    }
    Rat const_term = 0;
    for (int j = 0; j < n; ++j)
        const_term += Rat(inst.c[static_cast<size_t>(j)] * nd.lb[static_cast<size_t>(j)]);
    for (int jf = 0; jf < nf; ++jf)
        cost[static_cast<size_t>(jf)] = Rat(inst.c[static_cast<size_t>(free_vars[static_cast<size_t>(jf)])]);

    SimplexResult s = simplex_max(a, rhs, cost);
    NodeLp out;
    if (s.status == SolveStatus::Infeasible) return out;
    if (s.status == SolveStatus::Unbounded)
        throw CertificationError("branch and bound: node LP unbounded on a bounded problem");

    out.feasible = true;
    out.z.assign(static_cast<size_t>(n), Rat(0));
    for (int j = 0; j < n; ++j) out.z[static_cast<size_t>(j)] = Rat(nd.lb[static_cast<size_t>(j)]);
    for (int jf = 0; jf < nf; ++jf)
        out.z[static_cast<size_t>(free_vars[static_cast<size_t>(jf)])] += s.x[static_cast<size_t>(jf)];
    out.objective = s.objective + const_term;
    return out;
}

// Depth-first branch and bound over an explicit variable box. branch_set
// lists the indices required to be integral. When every variable is
// branched (pure case) all objective values are integral, so nodes are
// pruned on the floor of their relaxation bound.
IpResult branch_and_bound(const StandardInstance& inst, const std::vector<int>& branch_set,
                          const IntVec& lb0, const IntVec& ub0, const SolveLimits& limits) {
    IpResult res;
    std::vector<Node> stack;
    stack.push_back({lb0, ub0});
    std::optional<IpSolution> best;
    const bool integral_objective = static_cast<int>(branch_set.size()) == inst.n();

    while (!stack.empty()) {
        if (res.nodes >= limits.max_nodes) {
            res.status = SolveStatus::ResourceLimit;
            res.solution = best;
            return res;
        }
        ++res.nodes;
        Node nd = std::move(stack.back());
        stack.pop_back();

        bool empty_box = false;
        for (size_t j = 0; j < nd.lb.size(); ++j)
            if (nd.ub[j] >= 0 && nd.lb[j] > nd.ub[j]) { empty_box = true; break; }
        if (empty_box) continue;

        NodeLp lp = solve_node(inst, nd);
        if (!lp.feasible) continue;
        Rat node_bound = integral_objective ? Rat(rat_floor(lp.objective)) : lp.objective;
        if (best && node_bound <= best->objective) continue;

        int branch_var = -1;
        Rat best_frac = 0;
        for (int j : branch_set) {
            Rat f = rat_frac(lp.z[static_cast<size_t>(j)]);
            if (f == 0) continue;
            Rat score = std::min(f, Rat(1) - f);
            if (score > best_frac) { best_frac = score; branch_var = j; }
        }
        if (branch_var < 0) {
            best = IpSolution{lp.z, lp.objective};
            continue;
        }

        Int fl = rat_floor(lp.z[static_cast<size_t>(branch_var)]);
        Node up = nd;
        up.lb[static_cast<size_t>(branch_var)] = fl + 1;
        Node down = std::move(nd);
        down.ub[static_cast<size_t>(branch_var)] = fl;
        stack.push_back(std::move(up));
        stack.push_back(std::move(down));  // floor child explored first
    }

    if (best) {
        res.status = SolveStatus::Optimal;
        res.solution = std::move(best);
    } else {
        res.status = SolveStatus::Infeasible;
    }
    return res;
}

// Per-row contribution intervals of the still-unassigned suffix, used to
// prune the exhaustive enumerations.
struct SuffixBounds {
    std::vector<IntVec> min_sum;  // [depth][row]
    std::vector<IntVec> max_sum;
};

SuffixBounds make_suffix_bounds(const IntMatrix& a, const IntVec& lb, const IntVec& ub) {
    const int m = a.rows(), n = a.cols();
    SuffixBounds s;
    s.min_sum.assign(static_cast<size_t>(n) + 1, IntVec(static_cast<size_t>(m), Int(0)));
    s.max_sum.assign(static_cast<size_t>(n) + 1, IntVec(static_cast<size_t>(m), Int(0)));
    for (int j = n - 1; j >= 0; --j) {
        for (int i = 0; i < m; ++i) {
            const Int& coef = a(i, j);
            Int lo = coef >= 0 ? coef * lb[static_cast<size_t>(j)] : coef * ub[static_cast<size_t>(j)];
            Int hi = coef >= 0 ? coef * ub[static_cast<size_t>(j)] : coef * lb[static_cast<size_t>(j)];
            s.min_sum[static_cast<size_t>(j)][static_cast<size_t>(i)] =
                s.min_sum[static_cast<size_t>(j) + 1][static_cast<size_t>(i)] + lo;
            s.max_sum[static_cast<size_t>(j)][static_cast<size_t>(i)] =
                s.max_sum[static_cast<size_t>(j) + 1][static_cast<size_t>(i)] + hi;
        }
    }
    return s;
}

} // namespace

IpResult solve_boxed_mip(const StandardInstance& inst, const std::vector<int>& branch_set,
                         const IntVec& lb, const IntVec& ub, const SolveLimits& limits) {
    return branch_and_bound(inst, branch_set, lb, ub, limits);
}

IntVec proximity_search_box(const StandardInstance& inst, const LpVertex& vertex,
                            const Int& delta) {
    const int m = inst.m();
    Int reach = Int(m) * int_pow(Int(2 * m + 1), static_cast<unsigned long>(m)) * delta;
    IntVec box(static_cast<size_t>(inst.n()));
    for (int j = 0; j < inst.n(); ++j)
        box[static_cast<size_t>(j)] = rat_ceil(vertex.x[static_cast<size_t>(j)]) + reach;
    return box;
}

IntVec polytope_box(const StandardInstance& inst, const IntVec& box) {
    IntVec out = box;
    RatMatrix a = to_rat(inst.a);
    RatVec b = to_rat(inst.b);
    for (int j = 0; j < inst.n(); ++j) {
        RatVec obj(static_cast<size_t>(inst.n()), Rat(0));
        obj[static_cast<size_t>(j)] = 1;
        SimplexResult r = simplex_max(a, b, obj);
        if (r.status == SolveStatus::Optimal) {
            Int cap_j = rat_floor(r.objective);
            if (cap_j < out[static_cast<size_t>(j)]) out[static_cast<size_t>(j)] = cap_j;
        }
    }
    return out;
}

IpResult ip_solve(const StandardInstance& inst, const SolveLimits& limits) {
    MipInstance as_mip;
    as_mip.base = inst;
    for (int j = 0; j < inst.n(); ++j) as_mip.integral_indices.insert(j);
    return mip_solve(as_mip, limits);
}

IpResult mip_solve(const MipInstance& inst, const SolveLimits& limits) {
    const StandardInstance& base = inst.base;
    if (rank(base.a) != base.m())
        throw RankError("mip_solve: rank(A) < m");

    LpResult lp = lp_solve(base);
    IpResult res;
    if (lp.status == SolveStatus::Infeasible) {
        res.status = SolveStatus::Infeasible;
        return res;
    }

    Int delta = delta_k_exact(base.a, base.m(), limits.caps).first;

    if (lp.status == SolveStatus::Unbounded) {
        // Feasible + LP ray implies unbounded; otherwise infeasible. The
        // probe optimizes c = 0 inside a box around a feasible vertex,
        // with only the integral variables branched.
        StandardInstance zero = base;
        for (Int& ci : zero.c) ci = 0;
        MipInstance probe{zero, inst.integral_indices};
        IpResult fr = mip_solve(probe, limits);
        res.status = fr.status == SolveStatus::Optimal ? SolveStatus::Unbounded
                                                       : fr.status;
        return res;
    }

    // Box the branched variables. Some optimal solution lies within L1
    // reach of the LP vertex: for pure integer marks the published
    // entry/Delta bound m(2m+1)^m Delta applies; the sparsity chain
    // (m+1)(m+n)Delta covers arbitrary marks. The max of the two keeps
    // the box valid either way, so the boxed optimum is the true optimum.
    const int m = base.m(), n = base.n();
    Int reach = std::max(Int(m) * int_pow(Int(2 * m + 1), static_cast<unsigned long>(m)) * delta,
                         Int(m + 1) * Int(m + n) * delta);
    IntVec lb0(static_cast<size_t>(n), Int(0));
    IntVec ub0(static_cast<size_t>(n), Int(kUnbounded));
    std::vector<int> branch_set(inst.integral_indices.begin(), inst.integral_indices.end());
    IntVec reach_box(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
        reach_box[static_cast<size_t>(j)] = rat_ceil(lp.vertex->x[static_cast<size_t>(j)]) + reach;
    // Exact per-variable LP maxima shrink the proximity box losslessly;
    // the proximity reach only matters on unbounded coordinates.
    reach_box = polytope_box(base, reach_box);
    for (int j : branch_set) ub0[static_cast<size_t>(j)] = reach_box[static_cast<size_t>(j)];

    res = branch_and_bound(base, branch_set, lb0, ub0, limits);
    if (res.status == SolveStatus::Infeasible && lp.status == SolveStatus::Optimal) {
        // LP feasible but no mixed-integer point: report as infeasible.
        return res;
    }
    return res;
}

OracleResult ip_solve_oracle(const StandardInstance& inst, const IntVec& box,
                             const EnumerationCaps& caps) {
    if (static_cast<int>(box.size()) != inst.n())
        throw DimensionError("ip_solve_oracle: box size mismatch");
    const int m = inst.m(), n = inst.n();
    OracleResult out;
    IntVec lb(static_cast<size_t>(n), Int(0));
    for (int j = 0; j < n; ++j)
        if (box[static_cast<size_t>(j)] < 0) return out;  // empty box

    SuffixBounds sb = make_suffix_bounds(inst.a, lb, box);
    // Largest achievable objective over the unassigned suffix; pruning on
    // it cannot drop any optimal point, so the optimal set stays complete.
    IntVec obj_max(static_cast<size_t>(n) + 1, Int(0));
    for (int j = n - 1; j >= 0; --j) {
        const Int& cj = inst.c[static_cast<size_t>(j)];
        obj_max[static_cast<size_t>(j)] = obj_max[static_cast<size_t>(j) + 1] +
            (cj >= 0 ? cj * box[static_cast<size_t>(j)] : Int(0));
    }

    bool have = false;
    Int best = 0;
    IntVec z = lb;
    IntVec partial(static_cast<size_t>(m), Int(0));
    std::function<void(int, const Int&)> rec = [&](int depth, const Int& obj) {
        if (++out.visited > caps.node_cap)
            throw ResourceError("ip_solve_oracle: node cap exceeded "
                                "(raise PROXCERT_CAP to override)");
        for (int i = 0; i < m; ++i) {
            Int lo = partial[static_cast<size_t>(i)] + sb.min_sum[static_cast<size_t>(depth)][static_cast<size_t>(i)];
            Int hi = partial[static_cast<size_t>(i)] + sb.max_sum[static_cast<size_t>(depth)][static_cast<size_t>(i)];
            if (inst.b[static_cast<size_t>(i)] < lo || inst.b[static_cast<size_t>(i)] > hi) return;
        }
        if (have && obj + obj_max[static_cast<size_t>(depth)] < best) return;
        if (depth == n) {
            if (!have || obj > best) {
                have = true;
                best = obj;
                out.optimal_set.clear();
            }
            if (obj == best) out.optimal_set.push_back(z);
            return;
        }
        for (Int v = 0; v <= box[static_cast<size_t>(depth)]; ++v) {
            z[static_cast<size_t>(depth)] = v;
            for (int i = 0; i < m; ++i)
                partial[static_cast<size_t>(i)] += inst.a(i, depth) * v;
            rec(depth + 1, obj + inst.c[static_cast<size_t>(depth)] * v);
            for (int i = 0; i < m; ++i)
                partial[static_cast<size_t>(i)] -= inst.a(i, depth) * v;
        }
    };
    rec(0, Int(0));
    if (have) out.objective = Rat(best);
    return out;
}

namespace {

MinSupportResult min_support_impl(const StandardInstance& base,
                                  const std::set<int>& integral_indices, bool mixed,
                                  const Rat& optimal_value, const SolveLimits& limits) {
    const int n = base.n();
    long long tried = 0;

    // Support size 0: the zero vector.
    bool zero_feasible = true;
    for (const Int& bi : base.b)
        if (bi != 0) { zero_feasible = false; break; }
    if (zero_feasible && optimal_value == 0) {
        MinSupportResult r;
        r.solution.z.assign(static_cast<size_t>(n), Rat(0));
        r.solution.objective = 0;
        return r;
    }

    std::optional<MinSupportResult> fallback;
    for (int s = 1; s <= n; ++s) {
        std::optional<MinSupportResult> hit;
        for_each_subset(n, s, [&](const std::vector<int>& cols) {
            if (++tried > limits.caps.minor_cap) {
                return false;  // budget exhausted
            }
            ReducedSystem rs = reduce_to_full_row_rank(base.a.select_cols(cols), base.b);
            if (!rs.consistent || rs.a.rows() == 0) return true;

            StandardInstance sub;
            sub.a = rs.a;
            sub.b = rs.b;
            sub.c.resize(cols.size());
            for (size_t i = 0; i < cols.size(); ++i)
                sub.c[i] = base.c[static_cast<size_t>(cols[i])];

            // Cheap necessary condition before the full integer solve:
            // the restricted value-V face must be rationally feasible.
            {
                const int sr = sub.a.rows(), sc = sub.a.cols();
                RatMatrix face(sr + 1, sc);
                RatVec frhs(static_cast<size_t>(sr) + 1);
                for (int i = 0; i < sr; ++i) {
                    for (int j = 0; j < sc; ++j) face(i, j) = Rat(sub.a(i, j));
                    frhs[static_cast<size_t>(i)] = Rat(sub.b[static_cast<size_t>(i)]);
                }
                for (int j = 0; j < sc; ++j) face(sr, j) = Rat(sub.c[static_cast<size_t>(j)]);
                frhs[static_cast<size_t>(sr)] = optimal_value;
                RatVec zero_obj(static_cast<size_t>(sc), Rat(0));
                if (simplex_max(face, frhs, zero_obj).status == SolveStatus::Infeasible)
                    return true;
            }

            IpResult r;
            if (mixed) {
                MipInstance msub;
                msub.base = sub;
                for (size_t i = 0; i < cols.size(); ++i)
                    if (integral_indices.count(cols[i]))
                        msub.integral_indices.insert(static_cast<int>(i));
                r = mip_solve(msub, limits);
            } else {
                r = ip_solve(sub, limits);
            }
            if (r.status != SolveStatus::Optimal || r.solution->objective != optimal_value)
                return true;

            MinSupportResult res;
            res.solution.z.assign(static_cast<size_t>(n), Rat(0));
            for (size_t i = 0; i < cols.size(); ++i)
                res.solution.z[static_cast<size_t>(cols[i])] = r.solution->z[i];
            res.solution.objective = r.solution->objective;
            res.support_set = cols;
            hit = std::move(res);
            return false;
        });
        if (hit) return *hit;
        if (tried > limits.caps.minor_cap) break;
    }

    if (tried > limits.caps.minor_cap) {
        // Best effort: return any optimal solution, flagged non-certified.
        IpResult r = mixed ? mip_solve(MipInstance{base, integral_indices}, limits)
                           : ip_solve(base, limits);
        if (r.status == SolveStatus::Optimal) {
            MinSupportResult res;
            res.solution = *r.solution;
            for (int j = 0; j < n; ++j)
                if (res.solution.z[static_cast<size_t>(j)] != 0) res.support_set.push_back(j);
            res.certified = false;
            return res;
        }
        throw ResourceError("min_support: subset budget exhausted with no incumbent");
    }
    throw ValidationError("min_support: no optimal solution matches the given value");
}

} // namespace

MinSupportResult min_support(const StandardInstance& inst, const Rat& optimal_value,
                             const SolveLimits& limits) {
    std::set<int> all;
    for (int j = 0; j < inst.n(); ++j) all.insert(j);
    return min_support_impl(inst, all, /*mixed=*/false, optimal_value, limits);
}

MinSupportResult min_support(const MipInstance& inst, const Rat& optimal_value,
                             const SolveLimits& limits) {
    return min_support_impl(inst.base, inst.integral_indices, /*mixed=*/true, optimal_value,
                            limits);
}

std::string AssumptionReport::first_failure() const {
    if (!rank_ok) return "rank(A) < m";
    if (!lp_feasible) return "LP infeasible";
    if (!lp_bounded) return "LP unbounded";
    if (!ip_feasible) return "IP infeasible";
    return "";
}

AssumptionReport check_assumptions(const StandardInstance& inst, const SolveLimits& limits) {
    AssumptionReport rep;
    rep.rank_ok = rank(inst.a) == inst.m();
    if (!rep.rank_ok) return rep;

    LpResult lp = lp_solve(inst);
    rep.lp_feasible = lp.status != SolveStatus::Infeasible;
    rep.lp_bounded = lp.status != SolveStatus::Unbounded;
    if (lp.status == SolveStatus::Optimal) rep.lp_vertex = lp.vertex;
    if (lp.status == SolveStatus::Unbounded) rep.unbounded_ray = lp.ray;
    if (!rep.lp_feasible) return rep;

    StandardInstance zero = inst;
    for (Int& ci : zero.c) ci = 0;
    IpResult fr = ip_solve(zero, limits);
    rep.ip_feasible = fr.status == SolveStatus::Optimal;
    if (rep.ip_feasible) rep.ip_witness = fr.solution->integral();
    return rep;
}

ProximityMeasurement measure_true_proximity(const StandardInstance& inst, const RatVec& x_star,
                                            const Rat& optimal_value, const IntVec& known,
                                            const EnumerationCaps& caps) {
    const int m = inst.m(), n = inst.n();
    ProximityMeasurement out;
    out.nearest = to_rat(known);
    RatVec diff(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
        diff[static_cast<size_t>(j)] = Rat(known[static_cast<size_t>(j)]) - x_star[static_cast<size_t>(j)];
    Rat best = l1_norm(diff);
    if (best == 0) {
        out.distance = best;
        return out;
    }

    // Optimal face as an equality system: Az = b plus c^T z = V.
    if (!is_integer(optimal_value))
        throw ValidationError("measure_true_proximity: integer program has fractional value");
    IntMatrix face(m + 1, n);
    IntVec rhs(static_cast<size_t>(m) + 1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) face(i, j) = inst.a(i, j);
        rhs[static_cast<size_t>(i)] = inst.b[static_cast<size_t>(i)];
    }
    for (int j = 0; j < n; ++j) face(m, j) = inst.c[static_cast<size_t>(j)];
    rhs[static_cast<size_t>(m)] = numerator(optimal_value);

    // Distance clip: any optimal z with |z_j - x*_j| > best is beaten by
    // `known` already, so the minimum lives in this box.
    IntVec lb(static_cast<size_t>(n)), ub(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        lb[static_cast<size_t>(j)] = std::max(Int(0), rat_ceil(x_star[static_cast<size_t>(j)] - best));
        ub[static_cast<size_t>(j)] = rat_floor(x_star[static_cast<size_t>(j)] + best);
    }

    // Tighten per-variable bounds with exact LPs over the face polytope.
    RatMatrix face_r = to_rat(face);
    RatVec rhs_r = to_rat(rhs);
    for (int j = 0; j < n; ++j) {
        RatVec obj(static_cast<size_t>(n), Rat(0));
        obj[static_cast<size_t>(j)] = 1;
        SimplexResult mx = simplex_max(face_r, rhs_r, obj);
        if (mx.status == SolveStatus::Infeasible)
            throw CertificationError("measure_true_proximity: optimal face is empty");
        if (mx.status == SolveStatus::Optimal) {
            Int cap_j = rat_floor(mx.objective);
            if (cap_j < ub[static_cast<size_t>(j)]) ub[static_cast<size_t>(j)] = cap_j;
        }
        obj[static_cast<size_t>(j)] = -1;
        SimplexResult mn = simplex_max(face_r, rhs_r, obj);
        if (mn.status == SolveStatus::Optimal) {
            Int floor_j = rat_ceil(-mn.objective);
            if (floor_j > lb[static_cast<size_t>(j)]) lb[static_cast<size_t>(j)] = floor_j;
        }
    }

    // Minimal per-coordinate distance of any integer in [lb_j, ub_j].
    RatVec min_dist(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const Rat& x = x_star[static_cast<size_t>(j)];
        Int near = rat_floor(x);
        Rat m1 = rat_abs(Rat(std::clamp(near, lb[static_cast<size_t>(j)], ub[static_cast<size_t>(j)])) - x);
        Rat m2 = rat_abs(Rat(std::clamp(Int(near + 1), lb[static_cast<size_t>(j)], ub[static_cast<size_t>(j)])) - x);
        min_dist[static_cast<size_t>(j)] = std::min(m1, m2);
    }
    RatVec suffix_min(static_cast<size_t>(n) + 1, Rat(0));
    for (int j = n - 1; j >= 0; --j)
        suffix_min[static_cast<size_t>(j)] = suffix_min[static_cast<size_t>(j) + 1] + min_dist[static_cast<size_t>(j)];

    // DFS over the face lattice points with row-interval pruning plus a
    // lower bound on the remaining distance.
    long long visited = 0;
    SuffixBounds sb = make_suffix_bounds(face, lb, ub);
    IntVec z = lb;
    std::function<bool(int, IntVec&, Rat)> rec = [&](int depth, IntVec& partial, Rat dist) -> bool {
        if (++visited > caps.node_cap)
            throw ResourceError("measure_true_proximity: node cap exceeded");
        if (dist + suffix_min[static_cast<size_t>(depth)] >= best) return true;
        for (int i = 0; i <= m; ++i) {
            Int lo = partial[static_cast<size_t>(i)] + sb.min_sum[static_cast<size_t>(depth)][static_cast<size_t>(i)];
            Int hi = partial[static_cast<size_t>(i)] + sb.max_sum[static_cast<size_t>(depth)][static_cast<size_t>(i)];
            if (rhs[static_cast<size_t>(i)] < lo || rhs[static_cast<size_t>(i)] > hi) return true;
        }
        if (depth == n) {
            best = dist;  // guarded by the strict pruning test above
            out.nearest = to_rat(z);
            return true;
        }
        for (Int v = lb[static_cast<size_t>(depth)]; v <= ub[static_cast<size_t>(depth)]; ++v) {
            z[static_cast<size_t>(depth)] = v;
            for (int i = 0; i <= m; ++i)
                partial[static_cast<size_t>(i)] += face(i, depth) * v;
            Rat d2 = dist + rat_abs(Rat(v) - x_star[static_cast<size_t>(depth)]);
            rec(depth + 1, partial, d2);
            for (int i = 0; i <= m; ++i)
                partial[static_cast<size_t>(i)] -= face(i, depth) * v;
        }
        return true;
    };
    IntVec partial(static_cast<size_t>(m) + 1, Int(0));
    rec(0, partial, Rat(0));
    out.distance = best;
    return out;
}

ProximityMeasurement measure_true_proximity_mip(const MipInstance& inst, const RatVec& x_star,
                                                const Rat& optimal_value, const RatVec& known,
                                                const SolveLimits& limits) {
    const StandardInstance& base = inst.base;
    const int m = base.m(), n = base.n();
    ProximityMeasurement out;
    out.nearest = known;
    RatVec diff(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
        diff[static_cast<size_t>(j)] = known[static_cast<size_t>(j)] - x_star[static_cast<size_t>(j)];
    Rat radius = l1_norm(diff);
    if (radius == 0) {
        out.distance = radius;
        return out;
    }

    // Auxiliary program: min sum t_j subject to Az = b, c^T z = V,
    // t_j >= |z_j - x*_j|; split into two slack rows per variable, with
    // rational rows scaled integer. Variables: z (n), t (n), s1 (n), s2 (n).
    const int cols = 4 * n;
    const int rows = m + 1 + 2 * n;
    IntMatrix a(rows, cols);
    IntVec rhs(static_cast<size_t>(rows));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = base.a(i, j);
        rhs[static_cast<size_t>(i)] = base.b[static_cast<size_t>(i)];
    }
    {
        Int q = denominator(optimal_value);
        for (int j = 0; j < n; ++j) a(m, j) = q * base.c[static_cast<size_t>(j)];
        rhs[static_cast<size_t>(m)] = numerator(optimal_value);
    }
    for (int j = 0; j < n; ++j) {
        Int q = denominator(x_star[static_cast<size_t>(j)]);
        Int p = numerator(x_star[static_cast<size_t>(j)]);
        // q t_j - q z_j - q s1_j = -p  (t_j >= z_j - x*_j)
        a(m + 1 + 2 * j, j) = -q;
        a(m + 1 + 2 * j, n + j) = q;
        a(m + 1 + 2 * j, 2 * n + j) = -q;
        rhs[static_cast<size_t>(m + 1 + 2 * j)] = -p;
        // q t_j + q z_j - q s2_j = p   (t_j >= x*_j - z_j)
        a(m + 2 + 2 * j, j) = q;
        a(m + 2 + 2 * j, n + j) = q;
        a(m + 2 + 2 * j, 3 * n + j) = -q;
        rhs[static_cast<size_t>(m + 2 + 2 * j)] = p;
    }
    StandardInstance aux;
    aux.a = a;
    aux.b = rhs;
    aux.c.assign(static_cast<size_t>(cols), Int(0));
    for (int j = 0; j < n; ++j) aux.c[static_cast<size_t>(n + j)] = -1;  // max -sum t

    IntVec lb0(static_cast<size_t>(cols), Int(0));
    IntVec ub0(static_cast<size_t>(cols), Int(kUnbounded));
    std::vector<int> branch_set;
    for (int j : inst.integral_indices) {
        branch_set.push_back(j);
        ub0[static_cast<size_t>(j)] = rat_floor(x_star[static_cast<size_t>(j)] + radius);
    }

    IpResult r = branch_and_bound(aux, branch_set, lb0, ub0, limits);
    if (r.status != SolveStatus::Optimal)
        throw CertificationError("measure_true_proximity_mip: auxiliary solve failed: " +
                                 to_string(r.status));
    out.distance = -r.solution->objective;
    out.nearest.assign(static_cast<size_t>(n), Rat(0));
    for (int j = 0; j < n; ++j)
        out.nearest[static_cast<size_t>(j)] = r.solution->z[static_cast<size_t>(j)];
    return out;
}

} // namespace proxcert
