#include "proxcert/bounds.hpp"
#include "proxcert/determinants.hpp"

#include <doctest.h>

using namespace proxcert;

namespace {

IntMatrix random_matrix(Rng& rng, int rows, int cols, long bound) {
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Int(rng.uniform(-bound, bound));
    return m;
}

// Brute-force oracle over explicit index subsets, independent of the
// library's enumeration order.
Int max_minor_oracle(const IntMatrix& a, int k) {
    Int best = -1;
    for_each_subset(a.rows(), k, [&](const std::vector<int>& rows) {
        for_each_subset(a.cols(), k, [&](const std::vector<int>& cols) {
            Int d = abs(det(a.submatrix(rows, cols)));
            if (d > best) best = d;
            return true;
        });
        return true;
    });
    return best;
}

} // namespace

TEST_CASE("delta_k_exact examples") {
    CHECK(delta_k_exact(IntMatrix::identity(2), 2).first == 1);

    IntMatrix a{{2, 1, 0}, {1, 2, 1}};
    auto [v2, w2] = delta_k_exact(a, 2);
    CHECK(v2 == 3);
    CHECK(w2.col_set == std::vector<int>{0, 1});
    CHECK(delta_k_exact(a, 1).first == 2);
    CHECK_THROWS_AS(delta_k_exact(a, 3), ValidationError);

    EnumerationCaps tiny;
    tiny.minor_cap = 1;
    CHECK_THROWS_AS(delta_k_exact(a, 2, tiny), ResourceError);
}

TEST_CASE("delta_report matches the oracle") {
    Rng rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        IntMatrix a = random_matrix(rng, 2, 4, 5);
        DeltaReport rep = delta_report(a);
        REQUIRE(rep.delta_k.size() == 2);
        CHECK(rep.entry_norm == matrix_linf_norm(a));
        for (int k = 1; k <= 2; ++k) {
            CHECK(rep.delta_k[static_cast<size_t>(k - 1)] == max_minor_oracle(a, k));
            const DeltaWitness& w = rep.witnesses[static_cast<size_t>(k - 1)];
            CHECK(abs(det(a.submatrix(w.row_set, w.col_set))) ==
                  rep.delta_k[static_cast<size_t>(k - 1)]);
        }
    }
}

TEST_CASE("cauchy_binet_check examples") {
    CauchyBinetResult r1 = cauchy_binet_check(IntMatrix{{1, 0, 1}});
    CHECK(r1.lhs == 2);
    CHECK(r1.rhs == 2);
    CHECK(r1.equal);

    CauchyBinetResult r2 = cauchy_binet_check(IntMatrix::identity(2));
    CHECK(r2.lhs == 1);
    CHECK(r2.equal);

    CauchyBinetResult r3 = cauchy_binet_check(IntMatrix{{2, 1, 0}, {1, 2, 1}});
    CHECK(r3.lhs == 14);
    CHECK(r3.rhs == 14);
    CHECK(r3.equal);

    CHECK_THROWS_AS(cauchy_binet_check(IntMatrix(3, 2)), ValidationError);
}

TEST_CASE("cauchy_binet holds on random matrices") {
    Rng rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix a = random_matrix(rng, 1 + static_cast<int>(rng.uniform(0, 2)), 5, 4);
        CauchyBinetResult r = cauchy_binet_check(a);
        CHECK(r.equal);
    }
}

TEST_CASE("delta_general degenerate reductions and example") {
    // t = d = 0 reduces to delta_m(A).
    IntMatrix a{{2, 1}, {1, 2}};
    DeltaGeneralResult r = delta_general(a, IntMatrix(2, 0), IntMatrix(0, 0));
    CHECK(r.delta == 3);

    // m = n = 0 reduces to max_k delta_k(C).
    DeltaGeneralResult r2 = delta_general(IntMatrix(0, 0), IntMatrix(0, 1), IntMatrix{{2}});
    CHECK(r2.delta == 2);

    // Stacked example: rows {1,2}, cols {2,3} give |det| 4.
    DeltaGeneralResult r3 =
        delta_general(IntMatrix{{1, 2}}, IntMatrix{{3}}, IntMatrix{{2}});
    CHECK(r3.delta == 4);
    CHECK(r3.witness.row_set == std::vector<int>{0, 1});
    CHECK(r3.witness.col_set == std::vector<int>{1, 2});

    CHECK_THROWS_AS(delta_general(IntMatrix{{1, 2}, {2, 4}}, IntMatrix(2, 0), IntMatrix(0, 0)),
                    ValidationError);
}

TEST_CASE("delta_general degenerate agreement on random data") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        IntMatrix a = random_matrix(rng, 2, 4, 3);
        if (rank(a) != 2) continue;
        CHECK(delta_general(a, IntMatrix(2, 0), IntMatrix(0, 0)).delta ==
              delta_k_exact(a, 2).first);

        IntMatrix c = random_matrix(rng, 2, 3, 3);
        Int expect = -1;
        for (int k = 1; k <= 2; ++k) expect = std::max(expect, max_minor_oracle(c, k));
        CHECK(delta_general(IntMatrix(0, 0), IntMatrix(0, 3), c).delta == expect);
    }
}

TEST_CASE("delta_general dominates delta_m of the A block") {
    Rng rng(37);
    for (int trial = 0; trial < 15; ++trial) {
        IntMatrix a = random_matrix(rng, 2, 3, 3);
        IntMatrix b = random_matrix(rng, 2, 1, 3);
        IntMatrix c = random_matrix(rng, 1, 1, 3);
        if (rank(hcat(a, b)) != 2 || rank(a) != 2) continue;
        CHECK(delta_general(a, b, c).delta >= delta_k_exact(a, 2).first);
    }
}

TEST_CASE("maxdet_local_search examples") {
    // n = m: the only candidate.
    IntMatrix sq{{2, 4}, {1, 3}};
    MaxDetResult r = maxdet_local_search(sq, Rat(1, 2));
    CHECK(r.column_set == std::vector<int>{0, 1});
    CHECK(r.abs_det == 2);

    IntMatrix a{{1, 0, 2}, {0, 1, 2}};
    MaxDetResult r2 = maxdet_local_search(a, Rat(1, 2));
    CHECK(r2.abs_det == 2);
    bool expected = r2.column_set == std::vector<int>{0, 2} ||
                    r2.column_set == std::vector<int>{1, 2};
    CHECK(expected);

    // Identity padded with zero columns.
    IntMatrix padded{{1, 0, 0, 0}, {0, 1, 0, 0}};
    CHECK(maxdet_local_search(padded, Rat(1, 2)).abs_det == 1);

    CHECK_THROWS_AS(maxdet_local_search(IntMatrix{{1, 2}, {2, 4}}, Rat(1, 2)), RankError);
    CHECK_THROWS_AS(maxdet_local_search(a, Rat(0)), ValidationError);
}

TEST_CASE("maxdet_local_search meets the approximation factor empirically") {
    // abs_det * (2 log2(m+1))^{m/2} >= delta_m on desk-scale random data.
    Rng rng(41);
    int done = 0;
    for (int trial = 0; trial < 200 && done < 60; ++trial) {
        int m = 1 + static_cast<int>(rng.uniform(0, 2));
        int n = m + static_cast<int>(rng.uniform(0, 8 - m));
        IntMatrix a = random_matrix(rng, m, n, 5);
        if (rank(a) != m) continue;
        ++done;
        MaxDetResult r = maxdet_local_search(a, Rat(1, m));
        Int delta = delta_k_exact(a, m).first;
        BoundTerm guarantee = BoundTerm::pow_log(Rat(r.abs_det), Rat(m + 1), m);
        CHECK(compare_bound(Rat(delta), guarantee, /*strict=*/false).pass);
        CHECK(r.abs_det > 0);
        CHECK(r.abs_det <= delta);
    }
    CHECK(done == 60);
}

TEST_CASE("maxdet determinism") {
    Rng rng(43);
    IntMatrix a = random_matrix(rng, 2, 5, 5);
    REQUIRE(rank(a) == 2);
    MaxDetResult r1 = maxdet_local_search(a, Rat(1, 2));
    MaxDetResult r2 = maxdet_local_search(a, Rat(1, 2));
    CHECK(r1.column_set == r2.column_set);
    CHECK(r1.abs_det == r2.abs_det);
    CHECK(r1.swaps_performed == r2.swaps_performed);
}
