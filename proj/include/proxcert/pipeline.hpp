#ifndef PROXCERT_PIPELINE_HPP
#define PROXCERT_PIPELINE_HPP

#include "proxcert/general.hpp"
#include "proxcert/instance_io.hpp"

namespace proxcert {

// End-to-end certification of one standard/mixed instance: assumptions,
// minor analytics, LP vertex, exact integer optimum, minimum support,
// Lemma-3 repair, true proximity, and the bound ledger with pass flags.
//
// gated checks: comparisons the relevant theorems guarantee for this
// form (their failure falsifies the implementation and flips all_pass).
// informational checks: evaluated and reported but not gating (for
// example entry-norm bounds on mixed instances, where the cited
// generalizations are not re-proved here).
struct CertifyOutcome {
    bool pure = true;                   // all variables integral
    AssumptionReport assumptions;
    DeltaReport delta_rep;
    Int gram_det;                       // det(A A^T)
    LpVertex vertex;
    Rat ip_value;
    MinSupportResult minsup;
    ProximityCertificate certificate;
    Rat true_distance;                  // exact min over the optimal set
    RatVec nearest;                     // argmin witness
    Rat witness_linf;                   // L-inf distance of the witness
    std::vector<BoundCheckRecord> gated;
    std::vector<BoundCheckRecord> informational;
    bool all_pass = true;
    double solve_ms = 0, certify_ms = 0;
};

CertifyOutcome certify_instance(const MipInstance& inst, const SolveLimits& limits = {});

// General-form analog built around the Corollary-7 machinery.
struct GeneralCertifyOutcome {
    GeneralSolve solve;
    Int delta_gen;
    GeneralCertificate certificate;
    Rat true_distance;
    std::vector<BoundCheckRecord> gated;   // cor7 against the true distance
    bool all_pass = true;
};

GeneralCertifyOutcome certify_general_instance(const GeneralInstance& inst,
                                               const SolveLimits& limits = {});

} // namespace proxcert

#endif
