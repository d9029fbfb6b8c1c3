#ifndef PROXCERT_SIMPLEX_HPP
#define PROXCERT_SIMPLEX_HPP

#include "proxcert/instances.hpp"

#include <optional>

namespace proxcert {

// Result of the core exact simplex. `basis` maps tableau rows to column
// indices; redundant rows (rank-deficient inputs) are dropped, so
// basis.size() equals the row rank of A.
struct SimplexResult {
    SolveStatus status = SolveStatus::Infeasible;
    RatVec x;
    std::vector<int> basis;
    Rat objective;
    RatVec ray;  // improving direction certificate when unbounded
};

// Exact two-phase primal simplex with Bland's rule for
// max { c^T x : A x = b, x >= 0 }. Deterministic and cycle-free.
// Tolerates rank-deficient A (redundant rows are eliminated in phase 1),
// which callers use for column-restricted subproblems.
SimplexResult simplex_max(const RatMatrix& a, const RatVec& b, const RatVec& c);

// Optimal vertex of (LP): basic feasible solution with its basis.
struct LpVertex {
    RatVec x;
    std::vector<int> basis;  // sorted column indices, size m
    Rat objective;
};

struct LpResult {
    SolveStatus status = SolveStatus::Infeasible;
    std::optional<LpVertex> vertex;
    RatVec ray;
};

// Solves the LP relaxation of `inst`, requiring rank(A) = m (RankError
// otherwise). On Optimal the vertex invariants (Ax = b, x >= 0, basis
// independent, nonbasic components zero) are re-verified before return.
LpResult lp_solve(const StandardInstance& inst);

// All optimal vertices of (LP), by exhaustive basis enumeration at desk
// scale. Used by `certify --vertex-all`.
std::vector<LpVertex> enumerate_optimal_vertices(const StandardInstance& inst,
                                                 long long basis_cap = 1000000);

} // namespace proxcert

#endif
