#ifndef PROXCERT_EXACT_LINALG_HPP
#define PROXCERT_EXACT_LINALG_HPP

#include "proxcert/matrix.hpp"

#include <optional>

namespace proxcert {

// Exact determinant by Bareiss fraction-free elimination. Throws
// DimensionError on non-square input.
Int det(const IntMatrix& m);

// Exact rank over the rationals (fraction-free elimination).
int rank(const IntMatrix& m);
int rank(const RatMatrix& m);

// Exact solution of Mx = v for nonsingular square M. Throws
// SingularMatrixError when det(M) == 0.
RatVec solve_square(const IntMatrix& m, const IntVec& v);
RatVec solve_square(const RatMatrix& m, const RatVec& v);

// One-dimensional integer nullspace for M with rank(M) == cols(M) - 1.
// The result is primitive (gcd of absolute components is 1) with the
// first nonzero component positive. Throws RankError otherwise.
IntVec nullspace_dir(const IntMatrix& m);

// Any nonzero kernel vector of a rational matrix, or nothing when the
// kernel is trivial. Deterministic: the lowest-index free column of the
// reduced echelon form parameterizes the result.
std::optional<RatVec> kernel_vector(const RatMatrix& m);

// Row-style Hermite normal form of a nonsingular square integer matrix:
// transformed = unimodular * input is upper triangular with positive
// diagonal and every entry above a diagonal reduced modulo it
// (0 <= transformed(i,j) < diagonal[j] for i < j), which makes the
// output canonical.
struct HnfResult {
    IntMatrix unimodular;
    IntMatrix transformed;
    IntVec diagonal;
};

HnfResult hnf_row_style(const IntMatrix& b);

// Rewrites [A | b] by exact row reduction into an equivalent system with
// linearly independent integer rows (each row rescaled primitive).
// consistent == false means a 0 = nonzero row appeared, i.e. Ax = b has
// no solution at all.
struct ReducedSystem {
    IntMatrix a;
    IntVec b;
    bool consistent = true;
};

ReducedSystem reduce_to_full_row_rank(const IntMatrix& a, const IntVec& b);

} // namespace proxcert

#endif
