#include "proxcert/exact_linalg.hpp"

#include <algorithm>
#include <numeric>

namespace proxcert {

Int det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("det: matrix is not square");
    const int n = m.rows();
    if (n == 0) return 1;

    IntMatrix w = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        int pivot = -1;
        for (int i = k; i < n; ++i)
            if (w(i, k) != 0) { pivot = i; break; }
        if (pivot < 0) return 0;
        if (pivot != k) { w.swap_rows(pivot, k); sign = -sign; }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                // Bareiss update: intermediate division is exact.
                w(i, j) = (w(i, j) * w(k, k) - w(i, k) * w(k, j)) / prev;
            }
            w(i, k) = 0;
        }
        prev = w(k, k);
    }
    return sign > 0 ? w(n - 1, n - 1) : Int(-w(n - 1, n - 1));
}

int rank(const IntMatrix& m) {
    if (m.empty()) return 0;
    IntMatrix w = m;
    const int rows = w.rows(), cols = w.cols();
    Int prev = 1;
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (w(i, col) != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        w.swap_rows(pivot, r);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = col + 1; j < cols; ++j)
                w(i, j) = (w(i, j) * w(r, col) - w(i, col) * w(r, j)) / prev;
            w(i, col) = 0;
        }
        prev = w(r, col);
        ++r;
    }
    return r;
}

int rank(const RatMatrix& m) {
    if (m.empty()) return 0;
    RatMatrix w = m;
    const int rows = w.rows(), cols = w.cols();
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (w(i, col) != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        w.swap_rows(pivot, r);
        for (int i = r + 1; i < rows; ++i) {
            if (w(i, col) == 0) continue;
            Rat f = w(i, col) / w(r, col);
            for (int j = col; j < cols; ++j) w(i, j) -= f * w(r, j);
        }
        ++r;
    }
    return r;
}

RatVec solve_square(const RatMatrix& m, const RatVec& v) {
    if (m.rows() != m.cols()) throw DimensionError("solve_square: matrix is not square");
    if (static_cast<int>(v.size()) != m.rows())
        throw DimensionError("solve_square: rhs size mismatch");
    const int n = m.rows();
    RatMatrix w = m;
    RatVec rhs = v;
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);

    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int i = k; i < n; ++i)
            if (w(i, k) != 0) { pivot = i; break; }
        if (pivot < 0) throw SingularMatrixError("solve_square: singular matrix");
        if (pivot != k) {
            w.swap_rows(pivot, k);
            std::swap(rhs[static_cast<size_t>(pivot)], rhs[static_cast<size_t>(k)]);
        }
        for (int i = k + 1; i < n; ++i) {
            if (w(i, k) == 0) continue;
            Rat f = w(i, k) / w(k, k);
            for (int j = k; j < n; ++j) w(i, j) -= f * w(k, j);
            rhs[static_cast<size_t>(i)] -= f * rhs[static_cast<size_t>(k)];
        }
    }
    RatVec x(static_cast<size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        Rat s = rhs[static_cast<size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= w(i, j) * x[static_cast<size_t>(j)];
        x[static_cast<size_t>(i)] = s / w(i, i);
    }
    return x;
}

RatVec solve_square(const IntMatrix& m, const IntVec& v) {
    return solve_square(to_rat(m), to_rat(v));
}

namespace {

// Scale a rational vector to the primitive integer vector with the same
// direction; sign fixed so the first nonzero component is positive.
IntVec to_primitive(const RatVec& v) {
    Int lcm_den = 1;
    for (const Rat& x : v) lcm_den = lcm(lcm_den, denominator(x));
    IntVec u(v.size());
    Int g = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        u[i] = numerator(v[i]) * (lcm_den / denominator(v[i]));
        g = gcd(g, u[i]);
    }
    if (g == 0) throw RankError("to_primitive: zero vector");
    for (Int& x : u) x /= g;
    for (const Int& x : u) {
        if (x == 0) continue;
        if (x < 0)
            for (Int& y : u) y = -y;
        break;
    }
    return u;
}

} // namespace

IntVec nullspace_dir(const IntMatrix& m) {
    const int n = m.cols();
    if (rank(m) != n - 1)
        throw RankError("nullspace_dir: rank(M) != cols(M) - 1");

    // Rational elimination; the lone free column parameterizes the kernel.
    RatMatrix w = to_rat(m);
    const int rows = w.rows();
    std::vector<int> pivot_col;
    int r = 0;
    for (int col = 0; col < n && r < rows; ++col) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (w(i, col) != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        w.swap_rows(pivot, r);
        Rat p = w(r, col);
        for (int j = col; j < n; ++j) w(r, j) /= p;
        for (int i = 0; i < rows; ++i) {
            if (i == r || w(i, col) == 0) continue;
            Rat f = w(i, col);
            for (int j = col; j < n; ++j) w(i, j) -= f * w(r, j);
        }
        pivot_col.push_back(col);
        ++r;
    }

    int free_col = -1;
    for (int col = 0, pi = 0; col < n; ++col) {
        if (pi < static_cast<int>(pivot_col.size()) && pivot_col[static_cast<size_t>(pi)] == col) {
            ++pi;
            continue;
        }
        free_col = col;
        break;
    }

    RatVec v(static_cast<size_t>(n), Rat(0));
    v[static_cast<size_t>(free_col)] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i)
        v[static_cast<size_t>(pivot_col[i])] = -w(static_cast<int>(i), free_col);
    return to_primitive(v);
}

std::optional<RatVec> kernel_vector(const RatMatrix& m) {
    const int rows = m.rows(), n = m.cols();
    RatMatrix w = m;
    std::vector<int> pivot_col;
    int r = 0;
    for (int col = 0; col < n && r < rows; ++col) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (w(i, col) != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        w.swap_rows(pivot, r);
        Rat p = w(r, col);
        for (int j = col; j < n; ++j) w(r, j) /= p;
        for (int i = 0; i < rows; ++i) {
            if (i == r || w(i, col) == 0) continue;
            Rat f = w(i, col);
            for (int j = col; j < n; ++j) w(i, j) -= f * w(r, j);
        }
        pivot_col.push_back(col);
        ++r;
    }
    if (r == n) return std::nullopt;

    int free_col = -1;
    for (int col = 0, pi = 0; col < n; ++col) {
        if (pi < static_cast<int>(pivot_col.size()) && pivot_col[static_cast<size_t>(pi)] == col) {
            ++pi;
            continue;
        }
        free_col = col;
        break;
    }
    RatVec v(static_cast<size_t>(n), Rat(0));
    v[static_cast<size_t>(free_col)] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i)
        v[static_cast<size_t>(pivot_col[i])] = -w(static_cast<int>(i), free_col);
    return v;
}

HnfResult hnf_row_style(const IntMatrix& b) {
    if (b.rows() != b.cols()) throw DimensionError("hnf_row_style: matrix is not square");
    const int n = b.rows();
    IntMatrix t = b;
    IntMatrix u = IntMatrix::identity(n);

    for (int col = 0; col < n; ++col) {
        // Clear below the diagonal with extended-gcd row combinations.
        for (int i = col + 1; i < n; ++i) {
            if (t(i, col) == 0) continue;
            if (t(col, col) == 0) {
                t.swap_rows(col, i);
                u.swap_rows(col, i);
                continue;
            }
            Int g, p, q;
            // g = p*t(col,col) + q*t(i,col)
            {
                mpz_t gg, pp, qq;
                mpz_inits(gg, pp, qq, nullptr);
                mpz_gcdext(gg, pp, qq, t(col, col).backend().data(), t(i, col).backend().data());
                g = Int(gg); p = Int(pp); q = Int(qq);
                mpz_clears(gg, pp, qq, nullptr);
            }
            Int a_div = t(col, col) / g;
            Int b_div = t(i, col) / g;
            // Row pair transform [[p, q], [-b/g, a/g]] has determinant 1.
            for (int j = 0; j < n; ++j) {
                Int trow = p * t(col, j) + q * t(i, j);
                Int tnew = a_div * t(i, j) - b_div * t(col, j);
                t(col, j) = trow;
                t(i, j) = tnew;
                Int urow = p * u(col, j) + q * u(i, j);
                Int unew = a_div * u(i, j) - b_div * u(col, j);
                u(col, j) = urow;
                u(i, j) = unew;
            }
        }
        if (t(col, col) == 0)
            throw SingularMatrixError("hnf_row_style: singular matrix");
        if (t(col, col) < 0) {
            for (int j = 0; j < n; ++j) { t(col, j) = -t(col, j); u(col, j) = -u(col, j); }
        }
        // Reduce entries above the diagonal into [0, d_col).
        for (int i = 0; i < col; ++i) {
            Int q, rem;
            divide_qr(t(i, col), t(col, col), q, rem);
            if (rem < 0) --q;
            if (q == 0) continue;
            for (int j = 0; j < n; ++j) {
                t(i, j) -= q * t(col, j);
                u(i, j) -= q * u(col, j);
            }
        }
    }

    HnfResult res;
    res.diagonal.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) res.diagonal[static_cast<size_t>(i)] = t(i, i);
    res.transformed = std::move(t);
    res.unimodular = std::move(u);
    return res;
}

ReducedSystem reduce_to_full_row_rank(const IntMatrix& a, const IntVec& b) {
    if (static_cast<int>(b.size()) != a.rows())
        throw DimensionError("reduce_to_full_row_rank: rhs size mismatch");
    const int rows = a.rows(), cols = a.cols();
    RatMatrix w(rows, cols + 1);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) w(i, j) = Rat(a(i, j));
        w(i, cols) = Rat(b[static_cast<size_t>(i)]);
    }

    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (w(i, col) != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        w.swap_rows(pivot, r);
        for (int i = r + 1; i < rows; ++i) {
            if (w(i, col) == 0) continue;
            Rat f = w(i, col) / w(r, col);
            for (int j = col; j <= cols; ++j) w(i, j) -= f * w(r, j);
        }
        ++r;
    }

    ReducedSystem out;
    for (int i = r; i < rows; ++i)
        if (w(i, cols) != 0) { out.consistent = false; break; }

    out.a = IntMatrix(r, cols);
    out.b.resize(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) {
        Int l = 1;
        for (int j = 0; j <= cols; ++j) l = lcm(l, denominator(w(i, j)));
        Int g = 0;
        IntVec row(static_cast<size_t>(cols) + 1);
        for (int j = 0; j <= cols; ++j) {
            row[static_cast<size_t>(j)] = numerator(w(i, j)) * (l / denominator(w(i, j)));
            g = gcd(g, row[static_cast<size_t>(j)]);
        }
        if (g == 0) g = 1;
        for (int j = 0; j < cols; ++j) out.a(i, j) = row[static_cast<size_t>(j)] / g;
        out.b[static_cast<size_t>(i)] = row[static_cast<size_t>(cols)] / g;
    }
    return out;
}

} // namespace proxcert
