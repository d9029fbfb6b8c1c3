#ifndef PROXCERT_DETERMINANTS_HPP
#define PROXCERT_DETERMINANTS_HPP

#include "proxcert/exact_linalg.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace proxcert {

// Hard guards on exhaustive enumeration. Exceeding a cap raises
// ResourceError; there is no silent truncation. PROXCERT_CAP overrides
// both defaults at the CLI layer.
struct EnumerationCaps {
    long long minor_cap = 10'000'000;  // submatrix pairs in minor scans
    long long node_cap = 10'000'000;   // DFS nodes in point enumeration
};

// Visits k-subsets of {0..n-1} in lexicographic order while fn returns true.
void for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& fn);

// C(n, k) clamped to `cap + 1` to avoid overflow while testing caps.
long long binomial_clamped(int n, int k, long long cap);

struct DeltaWitness {
    std::vector<int> row_set;
    std::vector<int> col_set;
};

// Per-order minor maxima of a matrix: delta_k[k-1] is the largest
// absolute k x k minor, witness_k the first index pair attaining it in
// lexicographic order. delta = delta_k[m-1], entry_norm = delta_k[0].
struct DeltaReport {
    IntVec delta_k;
    Int delta;
    Int entry_norm;
    std::vector<DeltaWitness> witnesses;
};

std::pair<Int, DeltaWitness> delta_k_exact(const IntMatrix& a, int k,
                                           const EnumerationCaps& caps = {});

// Full report for k = 1..rows (requires rows <= cols and rank == rows
// only in the sense that delta_m > 0; no rank checks here).
DeltaReport delta_report(const IntMatrix& a, const EnumerationCaps& caps = {});

struct CauchyBinetResult {
    Int lhs;   // det(A A^T)
    Int rhs;   // sum of squared maximal minors
    bool equal;
};

CauchyBinetResult cauchy_binet_check(const IntMatrix& a, const EnumerationCaps& caps = {});

// General-form data parameter: the largest |det| over square submatrices
// of [[A, B], [0, C]] whose row set contains all of the first m rows
// (plus any subset of the C rows). Degenerate agreements: t = d = 0
// gives delta_m(A); m = n = 0 gives max_k delta_k(C).
struct DeltaGeneralResult {
    Int delta;
    DeltaWitness witness;  // rows/cols into the stacked (m+t) x (n+d) matrix
};

DeltaGeneralResult delta_general(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c,
                                 const EnumerationCaps& caps = {});

// Approximate maximum-determinant m x m column submatrix.
//
// Greedy pivoted initialization, then two sweeps of first-improvement
// single-column swaps: swaps growing |det| by a factor >= 1 + epsilon,
// followed by swaps growing |det| at all. The second sweep ends in a
// strict local optimum, which guarantees delta <= m^{m/2} |det(B)| (the
// exchange matrix B^{-1}A has entries of absolute value <= 1, then
// Hadamard); for m <= 5 that is stronger than the advertised
// (2 log2(m+1))^{m/2} factor.
struct MaxDetResult {
    std::vector<int> column_set;  // sorted, size m
    Int abs_det;                  // > 0
    Rat epsilon;
    int swaps_performed;
};

MaxDetResult maxdet_local_search(const IntMatrix& a, const Rat& epsilon);

} // namespace proxcert

#endif
