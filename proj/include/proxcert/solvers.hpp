#ifndef PROXCERT_SOLVERS_HPP
#define PROXCERT_SOLVERS_HPP

#include "proxcert/determinants.hpp"
#include "proxcert/simplex.hpp"

#include <optional>

namespace proxcert {

struct SolveLimits {
    long long max_nodes = 1'000'000;     // branch-and-bound nodes
    EnumerationCaps caps;                // oracle / subset enumeration
};

// Solution of (IP) or (MIP). z is rational so mixed solutions fit; for
// pure integer problems every component is integral.
struct IpSolution {
    RatVec z;
    Rat objective;

    IntVec integral() const;  // throws if any component is fractional
};

struct IpResult {
    SolveStatus status = SolveStatus::Infeasible;
    std::optional<IpSolution> solution;
    long long nodes = 0;
};

// Exact branch and bound for (IP): LP relaxation bounds via the exact
// simplex, branching on the most fractional variable (ties to the lowest
// index), depth first with the floor child explored first. Completeness
// comes from a finite search box around the optimal LP vertex whose
// validity is the published entry/Delta proximity bound. Deterministic.
IpResult ip_solve(const StandardInstance& inst, const SolveLimits& limits = {});

// Branch and bound restricted to the integrality marks of `inst`.
IpResult mip_solve(const MipInstance& inst, const SolveLimits& limits = {});

// Branch and bound over an explicit variable box; ub entry -1 means "no
// upper bound". Tolerates rank-deficient A. The caller must guarantee
// the box contains an optimal solution, otherwise the reported optimum
// is only valid for the boxed problem.
IpResult solve_boxed_mip(const StandardInstance& inst, const std::vector<int>& branch_set,
                         const IntVec& lb, const IntVec& ub,
                         const SolveLimits& limits = {});

// Exhaustive oracle: enumerates every z with 0 <= z <= box and Az = b by
// depth-first search with row-interval pruning, and returns the full set
// of optimal solutions. Independent of the simplex/branch-and-bound code
// paths. ResourceError when the visited-node cap is exceeded.
struct OracleResult {
    std::vector<IntVec> optimal_set;
    Rat objective;
    long long visited = 0;
};

OracleResult ip_solve_oracle(const StandardInstance& inst, const IntVec& box,
                             const EnumerationCaps& caps = {});

// Minimum-support optimal solution: iterates support size s = 0, 1, ...
// and tests each column subset (lexicographic order) by solving the
// column-restricted problem exactly. The first hit is a certified
// minimum; ties break to the lexicographically smallest support set.
struct MinSupportResult {
    IpSolution solution;
    std::vector<int> support_set;
    bool certified = true;  // false when the subset budget was exhausted
};

MinSupportResult min_support(const StandardInstance& inst, const Rat& optimal_value,
                             const SolveLimits& limits = {});
MinSupportResult min_support(const MipInstance& inst, const Rat& optimal_value,
                             const SolveLimits& limits = {});

// Standing-assumption report: rank(A) = m, (LP) feasible and bounded,
// (IP) feasible, each with a witness.
struct AssumptionReport {
    bool rank_ok = false;
    bool lp_feasible = false;
    bool lp_bounded = false;
    bool ip_feasible = false;
    std::optional<LpVertex> lp_vertex;
    RatVec unbounded_ray;
    std::optional<IntVec> ip_witness;

    bool all_hold() const { return rank_ok && lp_feasible && lp_bounded && ip_feasible; }
    std::string first_failure() const;
};

AssumptionReport check_assumptions(const StandardInstance& inst,
                                   const SolveLimits& limits = {});

// Componentwise search box around an optimal LP vertex that provably
// contains an optimal integer solution: ceil(x*_i) + the entry-norm /
// Delta proximity bound m(2m+1)^m * Delta.
IntVec proximity_search_box(const StandardInstance& inst, const LpVertex& vertex,
                            const Int& delta);

// Tightens a box with exact per-variable LP maxima over {Az = b, z >= 0}.
// Every feasible point satisfies the LP bounds, so clipping loses
// nothing; coordinates where the polytope is unbounded keep the input.
IntVec polytope_box(const StandardInstance& inst, const IntVec& box);

struct ProximityMeasurement {
    Rat distance;    // exact min L1 distance over the optimal set
    RatVec nearest;  // an optimal solution attaining it
};

// Exact minimum L1 distance from x_star to the set of optimal solutions,
// by exhaustive enumeration of the optimal face clipped to a certified
// distance ball. `known` must be some optimal solution (it caps the
// search radius).
ProximityMeasurement measure_true_proximity(const StandardInstance& inst, const RatVec& x_star,
                                            const Rat& optimal_value, const IntVec& known,
                                            const EnumerationCaps& caps = {});

// Mixed analog: minimum L1 distance from x_star over optimal solutions
// with the given integrality marks, via an auxiliary program with split
// distance variables. `known` caps the search radius.
ProximityMeasurement measure_true_proximity_mip(const MipInstance& inst, const RatVec& x_star,
                                                const Rat& optimal_value, const RatVec& known,
                                                const SolveLimits& limits = {});

} // namespace proxcert

#endif
