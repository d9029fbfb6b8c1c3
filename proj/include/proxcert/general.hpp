#ifndef PROXCERT_GENERAL_HPP
#define PROXCERT_GENERAL_HPP

#include "proxcert/proximity.hpp"

namespace proxcert {

// Standard-form image of a general instance: free variables split into
// positive and negative parts, inequality rows given slack columns.
// Integer slacks are lossless here because C, z and b2 are integral.
struct GeneralToStandard {
    StandardInstance std_form;
    int n = 0, d = 0, t = 0;

    // Map a standard-form point back to the n+d general coordinates.
    RatVec restore(const RatVec& x) const;
};

GeneralToStandard general_to_standard(const GeneralInstance& ginst);

struct GeneralSolve {
    SolveStatus lp_status = SolveStatus::Infeasible;
    RatVec x_star;          // optimal (GLP) vertex
    Rat lp_value;
    SolveStatus ip_status = SolveStatus::Infeasible;
    RatVec z_star;          // optimal (GIP) solution, integral
    Rat ip_value;
};

// Solves (GLP)/(GIP) through the standard-form image and purifies the
// LP optimum to a vertex of the general feasible region. Requires the
// region to be pointed (rank([B; C]) = d), else ValidationError.
GeneralSolve solve_general(const GeneralInstance& ginst, const SolveLimits& limits = {});

// Crossover within the optimal face to a point with n+d linearly
// independent active constraints.
RatVec purify_vertex_general(const GeneralInstance& ginst, RatVec x);

// Optimal (GIP) solution minimizing the support over the first n
// components (subset search in lexicographic order, sizes ascending).
RatVec min_support_general(const GeneralInstance& ginst, const Rat& optimal_value,
                           const SolveLimits& limits = {});

// Exact minimum L1 distance from x_star over all optimal (GIP)
// solutions, via the auxiliary mixed program with split distance
// variables; `known` caps the search radius.
ProximityMeasurement measure_true_proximity_general(const GeneralInstance& ginst,
                                                    const RatVec& x_star,
                                                    const Rat& optimal_value,
                                                    const RatVec& known,
                                                    const SolveLimits& limits = {});

struct GeneralCertificate {
    RatVec x_star;
    RatVec z_star;            // repaired optimal solution
    Rat l1_distance;
    Int delta_gen;
    int s_bar = 0;            // |supp(x*) u supp(z*)|
    std::vector<int> h_set;
    RaySet rays;
    Decomposition decomposition;
    Rat chain_bound;          // min{m+t+1, n+d} * S̄ * delta
    bool chain_ok = true;
    std::vector<BoundCheckRecord> checks;
    bool all_pass = true;
};

// Corollary-7 repair: projects onto the union of supports, pads the
// projected system with the b3 box rows to point the cone, enumerates
// rays (support <= min{m+t+1, n+d}, primitive norm <= delta), performs
// the conic decomposition, rounds, lifts and verifies.
GeneralCertificate repair_general(const GeneralInstance& ginst, const RatVec& x_star,
                                  const RatVec& z_star, const Rat& ip_value,
                                  const Int& delta_gen, const EnumerationCaps& caps = {});

} // namespace proxcert

#endif
