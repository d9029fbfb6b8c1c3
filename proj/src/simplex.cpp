#include "proxcert/simplex.hpp"

#include "proxcert/determinants.hpp"

#include <algorithm>

namespace proxcert {

namespace {

// Full-tableau primal simplex, maximization, Bland's rule: entering
// column is the lowest-index one with positive reduced cost; leaving row
// is the ratio-test minimum with the lowest basic variable index.
class Tableau {
public:
    Tableau(const RatMatrix& a, const RatVec& b)
        : m_(a.rows()), n_(a.cols()), t_(a.rows(), a.cols() + a.rows() + 1) {
        // Columns: 0..n-1 structural, n..n+m-1 artificial, last = rhs.
        for (int i = 0; i < m_; ++i) {
            bool flip = b[static_cast<size_t>(i)] < 0;
            for (int j = 0; j < n_; ++j) t_(i, j) = flip ? -a(i, j) : a(i, j);
            t_(i, n_ + i) = 1;
            t_(i, n_ + m_) = flip ? -b[static_cast<size_t>(i)] : b[static_cast<size_t>(i)];
            basis_.push_back(n_ + i);
        }
        active_rows_ = m_;
    }

    // Phase 1: minimize the sum of artificials. Returns false when the
    // optimum is positive (original system infeasible).
    bool phase1() {
        RatVec obj(static_cast<size_t>(n_ + m_), Rat(0));
        for (int j = n_; j < n_ + m_; ++j) obj[static_cast<size_t>(j)] = -1;
        load_objective(obj);
        pivot_loop(/*allow_artificial=*/true);
        if (objective_value() != 0) return false;
        drive_out_artificials();
        return true;
    }

    void phase2(const RatVec& c) {
        RatVec obj(static_cast<size_t>(n_ + m_), Rat(0));
        for (int j = 0; j < n_; ++j) obj[static_cast<size_t>(j)] = c[static_cast<size_t>(j)];
        load_objective(obj);
        unbounded_col_ = -1;
        pivot_loop(/*allow_artificial=*/false);
    }

    bool unbounded() const { return unbounded_col_ >= 0; }

    RatVec solution() const {
        RatVec x(static_cast<size_t>(n_), Rat(0));
        for (int i = 0; i < active_rows_; ++i)
            if (basis_[static_cast<size_t>(i)] < n_)
                x[static_cast<size_t>(basis_[static_cast<size_t>(i)])] = t_(i, n_ + m_);
        return x;
    }

    std::vector<int> structural_basis() const {
        std::vector<int> b;
        for (int i = 0; i < active_rows_; ++i)
            if (basis_[static_cast<size_t>(i)] < n_)
                b.push_back(basis_[static_cast<size_t>(i)]);
        std::sort(b.begin(), b.end());
        return b;
    }

    Rat objective_value() const { return obj_rhs_; }

    RatVec unbounded_ray() const {
        RatVec d(static_cast<size_t>(n_), Rat(0));
        if (unbounded_col_ < 0) return d;
        d[static_cast<size_t>(unbounded_col_)] = 1;
        for (int i = 0; i < active_rows_; ++i)
            if (basis_[static_cast<size_t>(i)] < n_)
                d[static_cast<size_t>(basis_[static_cast<size_t>(i)])] = -t_(i, unbounded_col_);
        return d;
    }

private:
    void load_objective(const RatVec& obj) {
        obj_row_ = obj;
        obj_rhs_ = 0;
        for (int i = 0; i < active_rows_; ++i) {
            int bv = basis_[static_cast<size_t>(i)];
            Rat cb = obj_row_[static_cast<size_t>(bv)];
            if (cb == 0) continue;
            for (int j = 0; j < n_ + m_; ++j)
                obj_row_[static_cast<size_t>(j)] -= cb * t_(i, j);
            obj_rhs_ += cb * t_(i, n_ + m_);
        }
    }

    void pivot_loop(bool allow_artificial) {
        const int limit = allow_artificial ? n_ + m_ : n_;
        while (true) {
            int enter = -1;
            for (int j = 0; j < limit; ++j) {
                if (dropped_.count(j)) continue;
                if (obj_row_[static_cast<size_t>(j)] > 0) { enter = j; break; }
            }
            if (enter < 0) return;

            int leave = -1;
            Rat best_ratio;
            for (int i = 0; i < active_rows_; ++i) {
                if (t_(i, enter) <= 0) continue;
                Rat ratio = t_(i, n_ + m_) / t_(i, enter);
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio &&
                     basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave)])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) { unbounded_col_ = enter; return; }
            pivot(leave, enter);
        }
    }

    void pivot(int row, int col) {
        Rat p = t_(row, col);
        for (int j = 0; j <= n_ + m_; ++j) t_(row, j) /= p;
        for (int i = 0; i < active_rows_; ++i) {
            if (i == row || t_(i, col) == 0) continue;
            Rat f = t_(i, col);
            for (int j = 0; j <= n_ + m_; ++j) t_(i, j) -= f * t_(row, j);
        }
        Rat f = obj_row_[static_cast<size_t>(col)];
        if (f != 0) {
            for (int j = 0; j < n_ + m_; ++j)
                obj_row_[static_cast<size_t>(j)] -= f * t_(row, j);
            obj_rhs_ += f * t_(row, n_ + m_);
        }
        int old = basis_[static_cast<size_t>(row)];
        if (old >= n_) dropped_.insert(old);  // artificials never re-enter
        basis_[static_cast<size_t>(row)] = col;
    }

    // After phase 1 with objective 0, pivot remaining artificial basics
    // onto structural columns; an all-zero row is redundant and removed.
    void drive_out_artificials() {
        for (int i = 0; i < active_rows_;) {
            if (basis_[static_cast<size_t>(i)] < n_) { ++i; continue; }
            int col = -1;
            for (int j = 0; j < n_; ++j)
                if (t_(i, j) != 0) { col = j; break; }
            if (col >= 0) {
                pivot(i, col);
                ++i;
            } else {
                remove_row(i);
            }
        }
    }

    void remove_row(int row) {
        dropped_.insert(basis_[static_cast<size_t>(row)]);
        int last = active_rows_ - 1;
        if (row != last) {
            t_.swap_rows(row, last);
            std::swap(basis_[static_cast<size_t>(row)], basis_[static_cast<size_t>(last)]);
        }
        basis_.pop_back();
        --active_rows_;
    }

    int m_, n_;
    RatMatrix t_;
    std::vector<int> basis_;
    RatVec obj_row_;
    Rat obj_rhs_;
    std::set<int> dropped_;
    int active_rows_ = 0;
    int unbounded_col_ = -1;
};

} // namespace

SimplexResult simplex_max(const RatMatrix& a, const RatVec& b, const RatVec& c) {
    if (static_cast<int>(b.size()) != a.rows() || static_cast<int>(c.size()) != a.cols())
        throw DimensionError("simplex_max: shape mismatch");

    SimplexResult res;
    Tableau t(a, b);
    if (!t.phase1()) {
        res.status = SolveStatus::Infeasible;
        return res;
    }
    t.phase2(c);
    if (t.unbounded()) {
        res.status = SolveStatus::Unbounded;
        res.ray = t.unbounded_ray();
        res.x = t.solution();
        return res;
    }
    res.status = SolveStatus::Optimal;
    res.x = t.solution();
    res.basis = t.structural_basis();
    res.objective = t.objective_value();
    return res;
}

LpResult lp_solve(const StandardInstance& inst) {
    if (rank(inst.a) != inst.m())
        throw RankError("lp_solve: rank(A) < m");

    SimplexResult s = simplex_max(to_rat(inst.a), to_rat(inst.b), to_rat(inst.c));
    LpResult out;
    out.status = s.status;
    if (s.status == SolveStatus::Unbounded) out.ray = s.ray;
    if (s.status != SolveStatus::Optimal) return out;

    LpVertex v;
    v.x = s.x;
    v.basis = s.basis;
    v.objective = s.objective;

    // With rank(A) = m phase 1 never removes a row, but a basis slot may
    // still carry a zero-valued artificial on a degenerate instance; top
    // it up with independent structural columns so |basis| = m.
    if (static_cast<int>(v.basis.size()) < inst.m()) {
        for (int j = 0; j < inst.n() && static_cast<int>(v.basis.size()) < inst.m(); ++j) {
            if (std::find(v.basis.begin(), v.basis.end(), j) != v.basis.end()) continue;
            std::vector<int> cand = v.basis;
            cand.push_back(j);
            std::sort(cand.begin(), cand.end());
            if (rank(inst.a.select_cols(cand)) == static_cast<int>(cand.size()))
                v.basis = cand;
        }
    }

    // Vertex invariants, verified on every call.
    RatVec ax = to_rat(inst.a).mul(v.x);
    for (int i = 0; i < inst.m(); ++i)
        if (ax[static_cast<size_t>(i)] != Rat(inst.b[static_cast<size_t>(i)]))
            throw CertificationError("lp_solve: vertex violates Ax = b");
    for (const Rat& xi : v.x)
        if (xi < 0) throw CertificationError("lp_solve: vertex has negative component");
    for (int j = 0; j < inst.n(); ++j)
        if (v.x[static_cast<size_t>(j)] != 0 &&
            std::find(v.basis.begin(), v.basis.end(), j) == v.basis.end())
            throw CertificationError("lp_solve: nonbasic component is nonzero");
    if (static_cast<int>(v.basis.size()) != inst.m() ||
        rank(inst.a.select_cols(v.basis)) != inst.m())
        throw CertificationError("lp_solve: basis is not linearly independent");

    out.vertex = std::move(v);
    return out;
}

std::vector<LpVertex> enumerate_optimal_vertices(const StandardInstance& inst,
                                                 long long basis_cap) {
    LpResult base = lp_solve(inst);
    if (base.status != SolveStatus::Optimal)
        throw ValidationError("enumerate_optimal_vertices: LP is not optimal");
    if (binomial_clamped(inst.n(), inst.m(), basis_cap) > basis_cap)
        throw ResourceError("enumerate_optimal_vertices: basis enumeration cap exceeded");

    const Rat opt = base.vertex->objective;
    std::vector<LpVertex> out;
    std::vector<RatVec> seen;
    for_each_subset(inst.n(), inst.m(), [&](const std::vector<int>& cols) {
        IntMatrix ab = inst.a.select_cols(cols);
        if (det(ab) == 0) return true;
        RatVec xb = solve_square(ab, inst.b);
        for (const Rat& xi : xb)
            if (xi < 0) return true;
        RatVec x(static_cast<size_t>(inst.n()), Rat(0));
        Rat obj = 0;
        for (size_t i = 0; i < cols.size(); ++i) {
            x[static_cast<size_t>(cols[i])] = xb[i];
            obj += Rat(inst.c[static_cast<size_t>(cols[i])]) * xb[i];
        }
        if (obj != opt) return true;
        if (std::find(seen.begin(), seen.end(), x) == seen.end()) {
            seen.push_back(x);
            LpVertex v;
            v.x = x;
            v.basis = cols;
            v.objective = obj;
            out.push_back(std::move(v));
        }
        return true;
    });
    return out;
}

} // namespace proxcert
