#include "proxcert/proximity.hpp"

#include <algorithm>
#include <set>

namespace proxcert {

namespace {

std::vector<int> union_support(const RatVec& a, const RatVec& b) {
    std::set<int> s;
    for (int i : support(a)) s.insert(i);
    for (int i : support(b)) s.insert(i);
    return {s.begin(), s.end()};
}

} // namespace

ConeSpec build_cone(const StandardInstance& inst, const RatVec& x_star, const RatVec& z_bar) {
    ConeSpec cone;
    if (x_star == z_bar) {
        cone.trivial = true;
        return cone;
    }
    cone.support = union_support(x_star, z_bar);
    const int h = static_cast<int>(cone.support.size());
    const int m = inst.m();

    cone.eq = inst.a.select_cols(cone.support);
    cone.ineq = IntMatrix(h, h);
    for (int p = 0; p < h; ++p) {
        int col = cone.support[static_cast<size_t>(p)];
        // Row -e_p of -I_H: z̄ > x* puts it in D1 (so u_p >= 0 inside K).
        if (z_bar[static_cast<size_t>(col)] > x_star[static_cast<size_t>(col)]) {
            cone.ineq(p, p) = 1;
            cone.d1_rows.push_back(p);
        } else {
            cone.ineq(p, p) = -1;
            cone.d2_rows.push_back(p);
        }
    }

    if (static_cast<int>(cone.support.size()) > m + static_cast<int>(support(z_bar).size()))
        throw CertificationError("build_cone: |H| exceeds m + |supp(z̄)|");
    return cone;
}

RaySet enumerate_rays(const ConeSpec& cone, const EnumerationCaps& caps) {
    RaySet rays;
    if (cone.trivial) return rays;
    const int dim = static_cast<int>(cone.support.size());
    const int ne = cone.eq.rows();
    const int total = ne + cone.ineq.rows();
    if (dim == 0) return rays;

    if (rank(vcat(cone.eq, cone.ineq)) != dim)
        throw ValidationError("enumerate_rays: cone is not pointed");
    if (binomial_clamped(total, dim - 1, caps.minor_cap) > caps.minor_cap)
        throw ResourceError("enumerate_rays: tight-set enumeration cap exceeded");

    std::set<IntVec> seen;
    for_each_subset(total, dim - 1, [&](const std::vector<int>& rows_idx) {
        IntMatrix tight(dim - 1, dim);
        for (size_t i = 0; i < rows_idx.size(); ++i) {
            int r = rows_idx[i];
            for (int j = 0; j < dim; ++j)
                tight(static_cast<int>(i), j) =
                    r < ne ? cone.eq(r, j) : cone.ineq(r - ne, j);
        }
        if (rank(tight) != dim - 1) return true;
        IntVec u = nullspace_dir(tight);

        // Equalities must hold outright; the primitive direction or its
        // negation must satisfy every inequality.
        for (int i = 0; i < ne; ++i) {
            Int dot = 0;
            for (int j = 0; j < dim; ++j) dot += cone.eq(i, j) * u[static_cast<size_t>(j)];
            if (dot != 0) return true;
        }
        auto satisfies = [&](const IntVec& v) {
            for (int i = 0; i < cone.ineq.rows(); ++i) {
                Int dot = 0;
                for (int j = 0; j < dim; ++j) dot += cone.ineq(i, j) * v[static_cast<size_t>(j)];
                if (dot < 0) return false;
            }
            return true;
        };
        IntVec neg(u.size());
        for (size_t j = 0; j < u.size(); ++j) neg[j] = -u[j];
        IntVec oriented;
        if (satisfies(u)) oriented = u;
        else if (satisfies(neg)) oriented = neg;
        else return true;

        if (seen.insert(oriented).second) {
            Ray ray;
            ray.u = oriented;
            ray.tight_set = rows_idx;
            ray.support_size = static_cast<int>(support(oriented).size());
            rays.push_back(std::move(ray));
        }
        return true;
    });
    return rays;
}

void certify_rays(const StandardInstance& inst, const ConeSpec& cone, RaySet& rays,
                  const Int& delta) {
    const int m = inst.m(), n = inst.n();
    for (Ray& ray : rays) {
        if (ray.support_size > m + 1)
            throw CertificationError("ray support exceeds m + 1");

        // Original column indices carrying the ray.
        std::vector<int> t_cols;
        for (size_t p = 0; p < ray.u.size(); ++p)
            if (ray.u[p] != 0) t_cols.push_back(cone.support[p]);

        // Extend to m+1 columns of full rank m by scanning columns of A.
        std::vector<int> ext = t_cols;
        int r = rank(inst.a.select_cols(ext));
        for (int j = 0; j < n && static_cast<int>(ext.size()) < m + 1; ++j) {
            if (std::find(ext.begin(), ext.end(), j) != ext.end()) continue;
            std::vector<int> cand = ext;
            cand.push_back(j);
            std::sort(cand.begin(), cand.end());
            int r2 = rank(inst.a.select_cols(cand));
            if (r2 > r) { ext = cand; r = r2; }
        }
        if (static_cast<int>(ext.size()) != m + 1 || r != m)
            throw CertificationError("ray scaling: no rank-m column extension found");

        // Kernel of the m x (m+1) matrix by cofactor minors: entry j is
        // (-1)^j det(A_ext minus column j), every one a minor of A.
        IntMatrix a_ext = inst.a.select_cols(ext);
        IntVec v(ext.size());
        std::vector<int> all_rows(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) all_rows[static_cast<size_t>(i)] = i;
        for (size_t j = 0; j < ext.size(); ++j) {
            std::vector<int> cols;
            for (size_t k = 0; k < ext.size(); ++k)
                if (k != j) cols.push_back(static_cast<int>(k));
            Int minor = det(a_ext.submatrix(all_rows, cols));
            v[j] = (j % 2 == 0) ? minor : -minor;
        }

        // Align sign with the oriented primitive ray and verify
        // proportionality: v = g * u with a positive integer g.
        IntVec u_ext(ext.size(), Int(0));
        for (size_t p = 0; p < ray.u.size(); ++p) {
            if (ray.u[p] == 0) continue;
            auto it = std::find(ext.begin(), ext.end(), cone.support[p]);
            u_ext[static_cast<size_t>(it - ext.begin())] = ray.u[p];
        }
        size_t anchor = 0;
        while (anchor < u_ext.size() && u_ext[anchor] == 0) ++anchor;
        if (anchor == u_ext.size() || v[anchor] == 0)
            throw CertificationError("ray scaling: kernel vector not aligned with ray");
        if ((v[anchor] > 0) != (u_ext[anchor] > 0))
            for (Int& x : v) x = -x;
        for (size_t j = 0; j < v.size(); ++j)
            if (v[j] * u_ext[anchor] != u_ext[j] * v[anchor])
                throw CertificationError("ray scaling: kernel vector not parallel to ray");

        if (linf_norm(v) > delta)
            throw CertificationError("ray scaling: representative exceeds Delta");
        ray.cramer = v;
    }
}

Decomposition decompose(const RatVec& target, const RaySet& rays) {
    Decomposition dec;
    const int dim = static_cast<int>(target.size());
    dec.rounded.assign(target.size(), Int(0));
    dec.lambdas.assign(rays.size(), Rat(0));

    bool target_zero = true;
    for (const Rat& t : target)
        if (t != 0) { target_zero = false; break; }
    if (target_zero) return dec;
    if (rays.empty())
        throw CertificationError("decompose: nonzero target with no rays");

    RatMatrix u_mat(dim, static_cast<int>(rays.size()));
    for (size_t k = 0; k < rays.size(); ++k)
        for (int j = 0; j < dim; ++j)
            u_mat(j, static_cast<int>(k)) = Rat(rays[k].u[static_cast<size_t>(j)]);

    RatVec zero_cost(rays.size(), Rat(0));
    SimplexResult s = simplex_max(u_mat, target, zero_cost);
    if (s.status != SolveStatus::Optimal)
        throw CertificationError("decompose: target is outside the cone of the rays");

    dec.lambdas = s.x;
    RatVec recombined(target.size(), Rat(0));
    for (size_t k = 0; k < rays.size(); ++k) {
        if (dec.lambdas[k] < 0)
            throw CertificationError("decompose: negative coefficient");
        if (dec.lambdas[k] == 0) continue;
        ++dec.positive_count;
        Int fl = rat_floor(dec.lambdas[k]);
        for (int j = 0; j < dim; ++j) {
            recombined[static_cast<size_t>(j)] += dec.lambdas[k] * Rat(rays[k].u[static_cast<size_t>(j)]);
            dec.rounded[static_cast<size_t>(j)] += fl * rays[k].u[static_cast<size_t>(j)];
        }
    }
    if (recombined != target)
        throw CertificationError("decompose: coefficients do not reproduce the target");
    if (dec.positive_count > dim)
        throw CertificationError("decompose: more positive coefficients than the dimension");
    return dec;
}

namespace {

ProximityCertificate repair_impl(const MipInstance& inst, const LpVertex& x_star,
                                 const RatVec& z_bar, const Rat& ip_value,
                                 const DeltaReport& delta_rep, const EnumerationCaps& caps) {
    const StandardInstance& base = inst.base;
    const int m = base.m(), n = base.n();

    // Input validation: z̄ optimal-feasible, x* optimal vertex data.
    RatVec az = to_rat(base.a).mul(z_bar);
    for (int i = 0; i < m; ++i)
        if (az[static_cast<size_t>(i)] != Rat(base.b[static_cast<size_t>(i)]))
            throw ValidationError("repair: z̄ violates Az = b");
    Rat cz = 0;
    for (int j = 0; j < n; ++j) {
        const Rat& zj = z_bar[static_cast<size_t>(j)];
        if (zj < 0) throw ValidationError("repair: z̄ has a negative component");
        if (inst.integral_indices.count(j) && !is_integer(zj))
            throw ValidationError("repair: z̄ fractional on an integral index");
        cz += Rat(base.c[static_cast<size_t>(j)]) * zj;
    }
    if (cz != ip_value)
        throw ValidationError("repair: z̄ is not optimal for the given value");

    ProximityCertificate cert;
    cert.x_star = x_star.x;
    cert.delta = delta_rep.delta;
    cert.support_z_bar = static_cast<int>(support(z_bar).size());

    cert.cone = build_cone(base, x_star.x, z_bar);
    if (cert.cone.trivial) {
        cert.z_star = z_bar;
        cert.l1_distance = 0;
        cert.linf_distance = 0;
        cert.chain_bound = 0;
        cert.chain_ok = true;  // vacuous: no decomposition ran
        return cert;
    }

    const auto& h = cert.cone.support;
    const int hs = static_cast<int>(h.size());
    cert.h_set = h;

    cert.rays = enumerate_rays(cert.cone, caps);
    certify_rays(base, cert.cone, cert.rays, delta_rep.delta);

    RatVec target(static_cast<size_t>(hs));
    for (int p = 0; p < hs; ++p)
        target[static_cast<size_t>(p)] =
            z_bar[static_cast<size_t>(h[static_cast<size_t>(p)])] -
            x_star.x[static_cast<size_t>(h[static_cast<size_t>(p)])];
    cert.decomposition = decompose(target, cert.rays);

    // z̃ = z̄_H - w and x̃ = x*_H + w, then lift by zeros.
    RatVec z_tilde(static_cast<size_t>(hs)), x_tilde(static_cast<size_t>(hs));
    for (int p = 0; p < hs; ++p) {
        int col = h[static_cast<size_t>(p)];
        z_tilde[static_cast<size_t>(p)] =
            z_bar[static_cast<size_t>(col)] - Rat(cert.decomposition.rounded[static_cast<size_t>(p)]);
        x_tilde[static_cast<size_t>(p)] =
            x_star.x[static_cast<size_t>(col)] + Rat(cert.decomposition.rounded[static_cast<size_t>(p)]);
    }

    cert.z_star.assign(static_cast<size_t>(n), Rat(0));
    for (int p = 0; p < hs; ++p)
        cert.z_star[static_cast<size_t>(h[static_cast<size_t>(p)])] = z_tilde[static_cast<size_t>(p)];

    // Verification block: feasibility of z̃ and x̃, integrality marks,
    // objective preservation, exact distance.
    RatVec az2 = to_rat(base.a).mul(cert.z_star);
    for (int i = 0; i < m; ++i)
        if (az2[static_cast<size_t>(i)] != Rat(base.b[static_cast<size_t>(i)]))
            throw CertificationError("repair: repaired solution violates Az = b");
    Rat cz2 = 0;
    for (int j = 0; j < n; ++j) {
        const Rat& zj = cert.z_star[static_cast<size_t>(j)];
        if (zj < 0) throw CertificationError("repair: repaired solution went negative");
        if (inst.integral_indices.count(j) && !is_integer(zj))
            throw CertificationError("repair: repaired solution lost integrality");
        cz2 += Rat(base.c[static_cast<size_t>(j)]) * zj;
    }
    if (cz2 != ip_value)
        throw CertificationError("repair: repaired solution changed the objective");
    for (const Rat& xi : x_tilde)
        if (xi < 0)
            throw CertificationError("repair: shifted LP point went negative");

    RatVec diff(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
        diff[static_cast<size_t>(j)] = cert.z_star[static_cast<size_t>(j)] - x_star.x[static_cast<size_t>(j)];
    cert.l1_distance = l1_norm(diff);
    cert.linf_distance = linf_norm(diff);

    cert.chain_bound = Rat(Int(m + 1) * Int(hs) * delta_rep.delta);
    cert.chain_ok = cert.l1_distance < cert.chain_bound;
    if (!cert.chain_ok)
        throw CertificationError("repair: distance reached (m+1)|H|Delta");

    // Construction-guaranteed ledger checks against the repaired distance.
    auto check = [&](const std::string& name, const BoundTerm& bound, const Rat& measured) {
        BoundCheckRecord rec;
        rec.name = name;
        rec.measured = measured;
        rec.bound = bound;
        rec.outcome = compare_bound(measured, bound, /*strict=*/true);
        cert.checks.push_back(rec);
        if (!rec.outcome.pass) cert.all_pass = false;
    };
    check("lemma3", bound_lemma3(m, cert.support_z_bar, delta_rep.delta), cert.l1_distance);
    check("cook_l1", bound_cook(m, n, delta_rep.delta_k, delta_rep.delta).l1_bound,
          cert.l1_distance);
    if (!cert.all_pass)
        throw CertificationError("repair: a construction-guaranteed bound failed");
    return cert;
}

} // namespace

ProximityCertificate repair(const MipInstance& inst, const LpVertex& x_star,
                            const RatVec& z_bar, const Rat& ip_value,
                            const DeltaReport& delta_rep, const EnumerationCaps& caps) {
    return repair_impl(inst, x_star, z_bar, ip_value, delta_rep, caps);
}

ProximityCertificate repair(const StandardInstance& inst, const LpVertex& x_star,
                            const RatVec& z_bar, const Rat& ip_value,
                            const DeltaReport& delta_rep, const EnumerationCaps& caps) {
    MipInstance mip;
    mip.base = inst;
    for (int j = 0; j < inst.n(); ++j) mip.integral_indices.insert(j);
    return repair_impl(mip, x_star, z_bar, ip_value, delta_rep, caps);
}

UipResult uip_pipeline(const StandardInstance& inst, const Rat& epsilon,
                       const SolveLimits& limits) {
    const int m = inst.m();
    if (rank(inst.a) != m) throw RankError("uip_pipeline: rank(A) < m");

    UipResult out;
    out.maxdet = maxdet_local_search(inst.a, epsilon);
    out.hnf = hnf_row_style(inst.a.select_cols(out.maxdet.column_set));
    out.ub_norm = matrix_linf_norm(out.hnf.transformed);

    // (U-IP): UA z = Ub with the same objective.
    out.transformed.a = out.hnf.unimodular * inst.a;
    out.transformed.c = inst.c;
    out.transformed.b.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        Int s = 0;
        for (int k = 0; k < m; ++k)
            s += out.hnf.unimodular(i, k) * inst.b[static_cast<size_t>(k)];
        out.transformed.b[static_cast<size_t>(i)] = s;
    }
    out.transformed.validate();

    // Bound chain. Exact Delta is available at desk scale.
    Int delta = delta_k_exact(inst.a, m, limits.caps).first;
    out.det_chain = BoundTerm::pow_log(Rat(out.maxdet.abs_det), Rat(m + 1), m);
    out.norm_chain = BoundTerm::pow_log(
        Rat(int_pow(out.ub_norm, static_cast<unsigned long>(m))), Rat(m + 1), m);
    out.det_chain_outcome = compare_bound(Rat(delta), out.det_chain, /*strict=*/false);
    out.norm_chain_outcome = compare_bound(Rat(delta), out.norm_chain, /*strict=*/false);
    if (!out.det_chain_outcome.pass)
        throw CertificationError("uip_pipeline: local search missed the determinant "
                                 "approximation guarantee");
    if (!out.norm_chain_outcome.pass)
        throw CertificationError("uip_pipeline: HNF norm chain failed");
    out.thm2_bound = bound_thm2(m, out.ub_norm);
    out.hnf_known_bound = bound_hnf_known(m, out.ub_norm);

    // Solve both programs; the optimal values must coincide (the
    // solution sets are identical).
    LpResult lp = lp_solve(out.transformed);
    if (lp.status != SolveStatus::Optimal)
        throw ValidationError("uip_pipeline: transformed LP not optimal: " + to_string(lp.status));
    IpResult ip_orig = ip_solve(inst, limits);
    IpResult ip_trans = ip_solve(out.transformed, limits);
    if (ip_orig.status != SolveStatus::Optimal || ip_trans.status != SolveStatus::Optimal)
        throw ValidationError("uip_pipeline: integer program not optimal");
    if (ip_orig.solution->objective != ip_trans.solution->objective)
        throw CertificationError("uip_pipeline: optimal values diverge under U");

    DeltaReport drep = delta_report(out.transformed.a, limits.caps);
    if (drep.delta != delta)
        throw CertificationError("uip_pipeline: unimodular transform changed Delta");

    MinSupportResult ms = min_support(out.transformed, ip_trans.solution->objective, limits);
    out.certificate = repair(out.transformed, *lp.vertex, ms.solution.z,
                             ip_trans.solution->objective, drep, limits.caps);

    out.true_proximity = measure_true_proximity(out.transformed, lp.vertex->x,
                                                ip_trans.solution->objective,
                                                ms.solution.integral(), limits.caps)
                             .distance;
    out.thm2_outcome = compare_bound(out.true_proximity, out.thm2_bound, /*strict=*/true);
    if (!out.thm2_outcome.pass)
        throw CertificationError("uip_pipeline: measured proximity reached the "
                                 "transformed-program bound");
    return out;
}

} // namespace proxcert
