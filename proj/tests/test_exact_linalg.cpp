#include "proxcert/determinants.hpp"
#include "proxcert/exact_linalg.hpp"

#include <doctest.h>

using namespace proxcert;

namespace {

// Independent determinant oracle: cofactor expansion along the first row.
Int det_cofactor(const IntMatrix& m) {
    const int n = m.rows();
    if (n == 1) return m(0, 0);
    Int acc = 0;
    for (int j = 0; j < n; ++j) {
        if (m(0, j) == 0) continue;
        std::vector<int> rows, cols;
        for (int i = 1; i < n; ++i) rows.push_back(i);
        for (int k = 0; k < n; ++k)
            if (k != j) cols.push_back(k);
        Int minor = det_cofactor(m.submatrix(rows, cols));
        acc += (j % 2 == 0 ? minor : -minor) * m(0, j);
    }
    return acc;
}

IntMatrix random_matrix(Rng& rng, int rows, int cols, long bound) {
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Int(rng.uniform(-bound, bound));
    return m;
}

Int vec_gcd(const IntVec& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    return g;
}

} // namespace

TEST_CASE("det basics") {
    CHECK(det(IntMatrix::identity(3)) == 1);
    CHECK(det(IntMatrix{{2, 1}, {1, 2}}) == det_cofactor(IntMatrix{{2, 1}, {1, 2}}));
    CHECK(det(IntMatrix{{2, 1}, {1, 2}}) == 3);
    CHECK(det(IntMatrix{{1, 2}, {2, 4}}) == 0);
    CHECK_THROWS_AS(det(IntMatrix(2, 3)), DimensionError);
}

TEST_CASE("det agrees with cofactor oracle and is multiplicative") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        IntMatrix a = random_matrix(rng, 3, 3, 5);
        IntMatrix b = random_matrix(rng, 3, 3, 5);
        CHECK(det(a) == det_cofactor(a));
        CHECK(det(a * b) == det(a) * det(b));
    }
}

TEST_CASE("rank") {
    CHECK(rank(IntMatrix::identity(2)) == 2);
    CHECK(rank(IntMatrix{{1, 2}, {2, 4}}) == 1);
    CHECK(rank(IntMatrix{{1, 0, 1}, {0, 1, 1}}) == 2);
    CHECK(rank(IntMatrix(2, 2)) == 0);

    // Gaussian-elimination oracle: rank equals the largest order of a
    // nonzero minor.
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        IntMatrix a = random_matrix(rng, 3, 4, 3);
        int r = rank(a);
        int best = 0;
        for (int k = 1; k <= 3; ++k) {
            for_each_subset(3, k, [&](const std::vector<int>& rows) {
                for_each_subset(4, k, [&](const std::vector<int>& cols) {
                    if (det(a.submatrix(rows, cols)) != 0) best = std::max(best, k);
                    return true;
                });
                return true;
            });
        }
        CHECK(r == best);
    }
}

TEST_CASE("solve_square") {
    CHECK(solve_square(IntMatrix::identity(2), IntVec{1, 2}) == RatVec{Rat(1), Rat(2)});
    CHECK(solve_square(IntMatrix{{2, 0}, {0, 3}}, IntVec{1, 1}) == RatVec{Rat(1, 2), Rat(1, 3)});
    CHECK(solve_square(IntMatrix{{2, 1}, {1, 2}}, IntVec{3, 3}) == RatVec{Rat(1), Rat(1)});
    CHECK_THROWS_AS(solve_square(IntMatrix{{1, 2}, {2, 4}}, IntVec{1, 1}), SingularMatrixError);

    // Substitute-back oracle on random nonsingular systems.
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        IntMatrix a = random_matrix(rng, 3, 3, 5);
        if (det(a) == 0) continue;
        IntVec v{Int(rng.uniform(-9, 9)), Int(rng.uniform(-9, 9)), Int(rng.uniform(-9, 9))};
        RatVec x = solve_square(a, v);
        RatVec ax = to_rat(a).mul(x);
        for (int i = 0; i < 3; ++i) CHECK(ax[static_cast<size_t>(i)] == Rat(v[static_cast<size_t>(i)]));
    }
}

TEST_CASE("nullspace_dir") {
    CHECK(nullspace_dir(IntMatrix{{2, 3}}) == IntVec{3, -2});
    CHECK(nullspace_dir(IntMatrix{{1, -1}}) == IntVec{1, 1});
    CHECK(nullspace_dir(IntMatrix{{1, 0, 0}, {0, 1, 0}}) == IntVec{0, 0, 1});
    CHECK_THROWS_AS(nullspace_dir(IntMatrix{{1, 0}, {0, 1}}), RankError);

    Rng rng(5);
    int done = 0;
    for (int trial = 0; trial < 100 && done < 30; ++trial) {
        IntMatrix m = random_matrix(rng, 2, 3, 4);
        if (rank(m) != 2) continue;
        ++done;
        IntVec u = nullspace_dir(m);
        CHECK(vec_gcd(u) == 1);
        for (int i = 0; i < 2; ++i) {
            Int dot = 0;
            for (int j = 0; j < 3; ++j) dot += m(i, j) * u[static_cast<size_t>(j)];
            CHECK(dot == 0);
        }
        // Sign convention: first nonzero component positive.
        for (const Int& x : u) {
            if (x == 0) continue;
            CHECK(x > 0);
            break;
        }
    }
    CHECK(done == 30);
}

TEST_CASE("hnf identity and swap") {
    HnfResult r = hnf_row_style(IntMatrix::identity(3));
    CHECK(r.unimodular == IntMatrix::identity(3));
    CHECK(r.transformed == IntMatrix::identity(3));

    HnfResult s = hnf_row_style(IntMatrix{{0, 1}, {1, 0}});
    CHECK(s.transformed == IntMatrix::identity(2));
    CHECK(s.unimodular == IntMatrix{{0, 1}, {1, 0}});
}

TEST_CASE("hnf canonical example") {
    IntMatrix b{{2, 4}, {1, 3}};
    HnfResult r = hnf_row_style(b);
    CHECK(r.diagonal == IntVec{1, 2});
    CHECK(abs(det(r.unimodular)) == 1);
    CHECK(r.transformed == r.unimodular * b);
    CHECK(r.diagonal[0] * r.diagonal[1] == abs(det(b)));
    // Upper triangular with the superdiagonal entry reduced mod d_2.
    CHECK(r.transformed(1, 0) == 0);
    CHECK(r.transformed(0, 1) >= 0);
    CHECK(r.transformed(0, 1) < r.diagonal[1]);
}

TEST_CASE("hnf properties on random nonsingular matrices") {
    Rng rng(13);
    int done = 0;
    for (int trial = 0; trial < 200 && done < 40; ++trial) {
        IntMatrix b = random_matrix(rng, 3, 3, 6);
        Int d = det(b);
        if (d == 0) continue;
        ++done;
        HnfResult r = hnf_row_style(b);
        CHECK(abs(det(r.unimodular)) == 1);
        CHECK(r.transformed == r.unimodular * b);
        Int prod = 1;
        for (int i = 0; i < 3; ++i) {
            prod *= r.diagonal[static_cast<size_t>(i)];
            CHECK(r.diagonal[static_cast<size_t>(i)] > 0);
            for (int j = 0; j < i; ++j) CHECK(r.transformed(i, j) == 0);
            for (int j = i + 1; j < 3; ++j) {
                CHECK(r.transformed(i, j) >= 0);
                CHECK(r.transformed(i, j) < r.diagonal[static_cast<size_t>(j)]);
            }
        }
        CHECK(prod == abs(d));
        // Bit-exact reproducibility.
        HnfResult r2 = hnf_row_style(b);
        CHECK(r2.transformed == r.transformed);
        CHECK(r2.unimodular == r.unimodular);
    }
    CHECK(done == 40);
    CHECK_THROWS_AS(hnf_row_style(IntMatrix{{1, 2}, {2, 4}}), SingularMatrixError);
}

TEST_CASE("reduce_to_full_row_rank") {
    // Duplicate row collapses; inconsistent duplicate is flagged.
    ReducedSystem ok = reduce_to_full_row_rank(IntMatrix{{1, 2}, {2, 4}}, IntVec{3, 6});
    CHECK(ok.consistent);
    CHECK(ok.a.rows() == 1);

    ReducedSystem bad = reduce_to_full_row_rank(IntMatrix{{1, 2}, {2, 4}}, IntVec{3, 7});
    CHECK_FALSE(bad.consistent);

    // Row operations preserve the solution set.
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        IntMatrix a = random_matrix(rng, 3, 4, 3);
        IntVec z{Int(rng.uniform(0, 4)), Int(rng.uniform(0, 4)), Int(rng.uniform(0, 4)),
                 Int(rng.uniform(0, 4))};
        IntVec b = a.mul(z);
        ReducedSystem rs = reduce_to_full_row_rank(a, b);
        REQUIRE(rs.consistent);
        CHECK(rank(rs.a) == rs.a.rows());
        CHECK(rs.a.mul(z) == rs.b);
    }
}

TEST_CASE("kernel_vector") {
    auto k = kernel_vector(to_rat(IntMatrix{{1, 1, 0}}));
    REQUIRE(k.has_value());
    Rat dot = (*k)[0] + (*k)[1];
    CHECK(dot == 0);
    CHECK_FALSE(kernel_vector(to_rat(IntMatrix::identity(2))).has_value());
}
