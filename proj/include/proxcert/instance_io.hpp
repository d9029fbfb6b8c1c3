#ifndef PROXCERT_INSTANCE_IO_HPP
#define PROXCERT_INSTANCE_IO_HPP

#include "proxcert/solvers.hpp"

#include <map>
#include <string>

namespace proxcert {

// One parsed instance file. Exactly one of the typed fields is set,
// matching `form`. Metadata is preserved verbatim through round trips.
struct AnyInstance {
    std::string form;  // "standard" | "mip" | "general"
    std::optional<StandardInstance> standard;
    std::optional<MipInstance> mip;
    std::optional<GeneralInstance> general;
    std::map<std::string, std::string> metadata;

    const StandardInstance& as_standard() const;
    MipInstance as_mip() const;  // standard promotes to all-integral marks
};

// UTF-8 JSON text, schema_version 1, integers as decimal strings (plain
// JSON integers are accepted on input). integral_indices are 1-based in
// files, matching the written convention I in {1..n}. Parsing validates
// all structural invariants; serialize(parse(text)) is canonical and
// parse(serialize(x)) == x bit-exactly.
AnyInstance parse_instance_text(const std::string& text);
AnyInstance parse_instance_file(const std::string& path);
std::string serialize_instance(const AnyInstance& inst);
void write_instance_file(const AnyInstance& inst, const std::string& path);

// Seeded generators; fully deterministic per (seed, parameters).
// A is uniform over [-entry_bound, entry_bound], resampled until
// rank(A) = m; b = A z0 with z0 uniform over [0, z0_bound]^n, making the
// integer program feasible by construction; c uniform; instances whose
// relaxation is unbounded are resampled.
StandardInstance gen_random(uint64_t seed, int m, int n, long entry_bound,
                            long z0_bound = 5);

// Standard generator plus a uniform random integrality mark set.
MipInstance gen_random_mip(uint64_t seed, int m, int n, long entry_bound,
                           long z0_bound = 5);

// General-form generator; additionally resamples until rank([B;C]) = d
// so (GLP) has vertices. Feasibility by construction with nonnegative
// slack on the inequality rows.
GeneralInstance gen_random_general(uint64_t seed, int m, int n, int t, int d,
                                   long entry_bound, long z0_bound = 3);

// The zero-objective demonstration that proximity of non-vertex LP
// solutions grows with the dimension: a single constraint row with a
// feasible all-halves point. Every feasible point is optimal (c = 0) and
// every integer solution is at L1 distance >= n/2 from the point.
struct NonVertexDemo {
    StandardInstance instance;
    RatVec point;
};

NonVertexDemo gen_nonvertex_demo(int n);

// Random search for instances with large measured-proximity ratios.
struct FrontierRow {
    uint64_t seed;
    StandardInstance instance;
    Int delta;
    Rat distance;        // exact measured proximity
    Rat ratio_delta;     // distance / Delta
    Rat ratio_entry;     // distance / ||A||_inf^m
};

struct FrontierResult {
    std::vector<FrontierRow> rows;  // sorted by ratio_delta, descending
};

FrontierResult frontier_search(uint64_t seed, int m, int n, long entry_bound,
                               int budget, int keep = 10,
                               const SolveLimits& limits = {});

} // namespace proxcert

#endif
