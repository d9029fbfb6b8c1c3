#ifndef PROXCERT_PROXIMITY_HPP
#define PROXCERT_PROXIMITY_HPP

#include "proxcert/bounds.hpp"
#include "proxcert/solvers.hpp"

namespace proxcert {

// Pointed cone from an optimal LP vertex and an optimal (mixed) integer
// solution, over the coordinates H = supp(x*) u supp(z̄): equality rows
// A_H, plus one oriented sign row per H-coordinate. Rows of -I_H with
// z̄_i > x*_i form D1 (u_i >= 0 in the cone), the rest form D2
// (u_i <= 0); all inequality rows are stored in ">= 0" orientation.
struct ConeSpec {
    std::vector<int> support;    // H as original column indices, sorted
    IntMatrix eq;                // equalities over the H-coordinates
    IntMatrix ineq;              // rows g with g u >= 0
    std::vector<int> d1_rows;    // H-positions whose sign row landed in D1
    std::vector<int> d2_rows;
    bool trivial = false;        // x* == z̄ (includes the n = m case)
};

struct Ray {
    IntVec u;                    // primitive, oriented into the cone
    std::vector<int> tight_set;  // constraint indices (eq first, then ineq)
    IntVec cramer;               // scaled representative with |entries| <= Delta
    int support_size = 0;
};

using RaySet = std::vector<Ray>;

// Conic combination of the rays reproducing `target` exactly with at
// most dim-many positive coefficients (a basic feasible solution).
struct Decomposition {
    RatVec lambdas;       // aligned with the ray set
    IntVec rounded;       // w = sum floor(lambda_i) u^i
    int positive_count = 0;
};

struct BoundCheckRecord {
    std::string name;
    Rat measured;
    BoundTerm bound;
    bool strict = true;
    CompareOutcome outcome;
};

// Machine-checked record of the repair construction.
struct ProximityCertificate {
    RatVec x_star;
    RatVec z_star;           // repaired optimal solution
    Rat l1_distance;         // ||z* - x*||_1, exact
    Rat linf_distance;
    std::vector<int> h_set;
    int support_z_bar = 0;   // S used in the ledger
    Int delta;
    ConeSpec cone;
    RaySet rays;
    Decomposition decomposition;
    Rat chain_bound;         // (m+1) |H| Delta
    bool chain_ok = true;
    std::vector<BoundCheckRecord> checks;
    bool all_pass = true;
};

ConeSpec build_cone(const StandardInstance& inst, const RatVec& x_star, const RatVec& z_bar);

// All extreme rays: each is the one-dimensional nullspace of |H|-1
// linearly independent tight constraints, oriented by cone membership,
// deduplicated by primitive form.
RaySet enumerate_rays(const ConeSpec& cone, const EnumerationCaps& caps = {});

// Claim-1 certification for standard-form rays: support at most m+1 and
// an explicit scaled representative, built from the kernel minors of an
// (m+1)-column extension of the ray support, whose entries are minors of
// A and hence at most Delta in magnitude. CertificationError on any
// violation.
void certify_rays(const StandardInstance& inst, const ConeSpec& cone, RaySet& rays,
                  const Int& delta);

Decomposition decompose(const RatVec& target, const RaySet& rays);

// Lemma-3 repair: projects onto H, decomposes z̄_H - x*_H over the
// extreme rays, rounds the coefficients down, and lifts the repaired
// solution back. Every claimed property is re-verified; violations
// raise CertificationError. `ip_value` is the known optimal value used
// to confirm optimality of z̄ and preservation under repair.
ProximityCertificate repair(const MipInstance& inst, const LpVertex& x_star,
                            const RatVec& z_bar, const Rat& ip_value,
                            const DeltaReport& delta_rep,
                            const EnumerationCaps& caps = {});
ProximityCertificate repair(const StandardInstance& inst, const LpVertex& x_star,
                            const RatVec& z_bar, const Rat& ip_value,
                            const DeltaReport& delta_rep,
                            const EnumerationCaps& caps = {});

// Unimodular transformation pipeline: approximate max-determinant basis,
// row-style HNF of it, the transformed program (UA, Ub), and the
// certified bound chain delta <= ||UB||^m (2 log2(m+1))^{m/2} together
// with a repair certificate on the transformed program.
struct UipResult {
    MaxDetResult maxdet;
    HnfResult hnf;
    StandardInstance transformed;
    Int ub_norm;
    BoundTerm det_chain;        // |det B| (2 log2(m+1))^{m/2}
    BoundTerm norm_chain;       // ||UB||^m (2 log2(m+1))^{m/2}
    CompareOutcome det_chain_outcome;   // delta <= det_chain
    CompareOutcome norm_chain_outcome;  // delta <= norm_chain
    BoundTerm thm2_bound;
    BoundTerm hnf_known_bound;
    ProximityCertificate certificate;   // on the transformed program
    Rat true_proximity;                 // exact, on the transformed program
    CompareOutcome thm2_outcome;        // true_proximity < thm2_bound
};

UipResult uip_pipeline(const StandardInstance& inst, const Rat& epsilon,
                       const SolveLimits& limits = {});

} // namespace proxcert

#endif
