#include "proxcert/determinants.hpp"

#include <algorithm>

namespace proxcert {

void for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& fn) {
    if (k < 0 || k > n) return;
    std::vector<int> idx(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
    while (true) {
        if (!fn(idx)) return;
        int i = k - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
        if (i < 0) return;
        ++idx[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
}

long long binomial_clamped(int n, int k, long long cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return r;
}

std::pair<Int, DeltaWitness> delta_k_exact(const IntMatrix& a, int k,
                                           const EnumerationCaps& caps) {
    if (k < 1 || k > std::min(a.rows(), a.cols()))
        throw ValidationError("delta_k_exact: k out of range");
    long long nrow = binomial_clamped(a.rows(), k, caps.minor_cap);
    long long ncol = binomial_clamped(a.cols(), k, caps.minor_cap);
    if (nrow > caps.minor_cap / std::max(1LL, ncol))
        throw ResourceError("delta_k_exact: minor enumeration cap exceeded; "
                            "use maxdet_local_search for an approximation");

    Int best = -1;
    DeltaWitness wit;
    for_each_subset(a.rows(), k, [&](const std::vector<int>& rows) {
        for_each_subset(a.cols(), k, [&](const std::vector<int>& cols) {
            Int d = abs(det(a.submatrix(rows, cols)));
            if (d > best) {
                best = d;
                wit.row_set = rows;
                wit.col_set = cols;
            }
            return true;
        });
        return true;
    });
    return {best, wit};
}

DeltaReport delta_report(const IntMatrix& a, const EnumerationCaps& caps) {
    DeltaReport rep;
    int kmax = std::min(a.rows(), a.cols());
    for (int k = 1; k <= kmax; ++k) {
        auto [v, w] = delta_k_exact(a, k, caps);
        rep.delta_k.push_back(v);
        rep.witnesses.push_back(w);
    }
    rep.entry_norm = rep.delta_k.front();
    rep.delta = rep.delta_k.back();
    return rep;
}

CauchyBinetResult cauchy_binet_check(const IntMatrix& a, const EnumerationCaps& caps) {
    if (a.rows() > a.cols())
        throw ValidationError("cauchy_binet_check: requires rows <= cols");
    const int m = a.rows();
    if (binomial_clamped(a.cols(), m, caps.minor_cap) > caps.minor_cap)
        throw ResourceError("cauchy_binet_check: minor enumeration cap exceeded");

    CauchyBinetResult res;
    res.lhs = det(a * a.transpose());
    res.rhs = 0;
    std::vector<int> all_rows(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) all_rows[static_cast<size_t>(i)] = i;
    for_each_subset(a.cols(), m, [&](const std::vector<int>& cols) {
        Int d = det(a.submatrix(all_rows, cols));
        res.rhs += d * d;
        return true;
    });
    res.equal = res.lhs == res.rhs;
    return res;
}

DeltaGeneralResult delta_general(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c,
                                 const EnumerationCaps& caps) {
    // Shapes: A is m x n, B is m x d, C is t x d; any dimension may be 0.
    const int m = a.rows();
    const int n = a.cols();
    const int d = b.cols();
    const int t = c.rows();
    if (b.rows() != m) throw DimensionError("delta_general: A and B row mismatch");
    if (c.cols() != d) throw DimensionError("delta_general: B and C column mismatch");

    IntMatrix ab = hcat(a, b);
    if (m > 0 && rank(ab) != m)
        throw ValidationError("delta_general: rank([A,B]) < m");

    // Stacked matrix [[A, B], [0, C]].
    IntMatrix stacked = vcat(ab, hcat(IntMatrix(t, n), c));
    const int total_rows = m + t;
    const int total_cols = n + d;

    long long work = 0;
    int kmax = std::min(total_rows, total_cols);
    for (int k = std::max(m, 1); k <= kmax; ++k) {
        long long rows_choices = binomial_clamped(t, k - m, caps.minor_cap);
        long long col_choices = binomial_clamped(total_cols, k, caps.minor_cap);
        if (rows_choices > 0 && col_choices > caps.minor_cap / std::max(1LL, rows_choices))
            throw ResourceError("delta_general: enumeration cap exceeded");
        work += rows_choices * col_choices;
        if (work > caps.minor_cap)
            throw ResourceError("delta_general: enumeration cap exceeded");
    }

    Int best = -1;
    DeltaWitness wit;
    for (int k = std::max(m, 1); k <= kmax; ++k) {
        // Row sets: all of rows 0..m-1 plus (k - m) of the C rows.
        for_each_subset(t, k - m, [&](const std::vector<int>& extra) {
            std::vector<int> rows(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i) rows[static_cast<size_t>(i)] = i;
            for (int e : extra) rows.push_back(m + e);
            for_each_subset(total_cols, k, [&](const std::vector<int>& cols) {
                Int v = abs(det(stacked.submatrix(rows, cols)));
                if (v > best) {
                    best = v;
                    wit.row_set = rows;
                    wit.col_set = cols;
                }
                return true;
            });
            return true;
        });
    }
    return {best, wit};
}

MaxDetResult maxdet_local_search(const IntMatrix& a, const Rat& epsilon) {
    const int m = a.rows(), n = a.cols();
    if (epsilon <= 0) throw ValidationError("maxdet_local_search: epsilon must be positive");
    if (rank(a) != m) throw RankError("maxdet_local_search: rank(A) < m");

    // Greedy initialization: complete-pivoted elimination, selecting at
    // each step the column whose pivot has the largest absolute value.
    std::vector<int> selected;
    {
        RatMatrix w = to_rat(a);
        std::vector<bool> used_col(static_cast<size_t>(n), false);
        for (int step = 0; step < m; ++step) {
            int best_col = -1, best_row = -1;
            Rat best_abs = 0;
            for (int j = 0; j < n; ++j) {
                if (used_col[static_cast<size_t>(j)]) continue;
                for (int i = step; i < m; ++i) {
                    Rat v = rat_abs(w(i, j));
                    if (v > best_abs) { best_abs = v; best_col = j; best_row = i; }
                }
            }
            if (best_col < 0) throw RankError("maxdet_local_search: rank(A) < m");
            used_col[static_cast<size_t>(best_col)] = true;
            selected.push_back(best_col);
            w.swap_rows(best_row, step);
            for (int i = step + 1; i < m; ++i) {
                if (w(i, best_col) == 0) continue;
                Rat f = w(i, best_col) / w(step, best_col);
                for (int j = 0; j < n; ++j) w(i, j) -= f * w(step, j);
            }
        }
        std::sort(selected.begin(), selected.end());
    }

    auto abs_det_of = [&](const std::vector<int>& cols) -> Int {
        return abs(det(a.select_cols(cols)));
    };

    Int cur = abs_det_of(selected);
    int swaps = 0;

    // First-improvement scan; accept_any toggles the acceptance threshold
    // between factor (1 + epsilon) and strict growth.
    auto sweep = [&](bool accept_any) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (size_t si = 0; si < selected.size() && !improved; ++si) {
                for (int j = 0; j < n && !improved; ++j) {
                    if (std::find(selected.begin(), selected.end(), j) != selected.end())
                        continue;
                    std::vector<int> cand = selected;
                    cand[si] = j;
                    std::sort(cand.begin(), cand.end());
                    Int v = abs_det_of(cand);
                    bool accept = accept_any
                        ? v > cur
                        : Rat(v) >= (Rat(1) + epsilon) * Rat(cur);
                    if (accept && v > cur) {
                        selected = cand;
                        cur = v;
                        ++swaps;
                        improved = true;
                    }
                }
            }
        }
    };
    sweep(false);
    sweep(true);

    MaxDetResult res;
    res.column_set = selected;
    res.abs_det = cur;
    res.epsilon = epsilon;
    res.swaps_performed = swaps;
    return res;
}

} // namespace proxcert
