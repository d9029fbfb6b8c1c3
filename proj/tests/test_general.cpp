#include "proxcert/general.hpp"
#include "proxcert/instance_io.hpp"
#include "proxcert/pipeline.hpp"

#include <doctest.h>

using namespace proxcert;

namespace {

// max z3 with z1 + z2 + 2 z3 = 4, z3 <= 1, z1, z2 >= 0, z3 free.
GeneralInstance small_general() {
    GeneralInstance g;
    g.a = IntMatrix{{1, 1}};
    g.b = IntMatrix{{2}};
    g.c_mat = IntMatrix{{1}};
    g.b1 = IntVec{4};
    g.b2 = IntVec{1};
    g.c = IntVec{0, 0, 1};
    return g;
}

} // namespace

TEST_CASE("general_to_standard round trip") {
    GeneralInstance g = small_general();
    GeneralToStandard map = general_to_standard(g);
    CHECK(map.std_form.m() == 2);
    CHECK(map.std_form.n() == 2 + 2 + 1);
    // A feasible general point maps through restore consistently.
    RatVec x{Rat(1), Rat(2), Rat(1), Rat(0), Rat(0)};  // z=(1,2), z3=1, slack 0
    RatVec z = map.restore(x);
    CHECK(z == RatVec{Rat(1), Rat(2), Rat(1)});
}

TEST_CASE("solve_general basics") {
    GeneralInstance g = small_general();
    GeneralSolve s = solve_general(g);
    REQUIRE(s.lp_status == SolveStatus::Optimal);
    REQUIRE(s.ip_status == SolveStatus::Optimal);
    CHECK(s.lp_value == 1);
    CHECK(s.ip_value == 1);
    CHECK(s.x_star[2] == 1);
    CHECK(s.z_star[2] == 1);
    CHECK(s.lp_value >= s.ip_value);
}

TEST_CASE("purify reaches a vertex") {
    GeneralInstance g = small_general();
    GeneralToStandard map = general_to_standard(g);
    LpResult lp = lp_solve(map.std_form);
    if (lp.status == SolveStatus::Optimal) {
        RatVec x = purify_vertex_general(g, map.restore(lp.vertex->x));
        // A vertex activates n+d independent constraints; at minimum it
        // is feasible with the same objective.
        Rat obj = 0;
        for (size_t j = 0; j < x.size(); ++j) obj += Rat(g.c[j]) * x[j];
        CHECK(obj == lp.vertex->objective);
    }
}

TEST_CASE("general pipeline on seeded instances") {
    int done = 0;
    for (uint64_t seed = 3000; seed < 3080 && done < 12; ++seed) {
        GeneralInstance g;
        try {
            g = gen_random_general(seed, 1, 3, 1, 1, 3);
        } catch (const Error&) {
            continue;
        }
        GeneralSolve s = solve_general(g);
        if (s.lp_status != SolveStatus::Optimal || s.ip_status != SolveStatus::Optimal)
            continue;
        ++done;

        Int dg = delta_general(g.a, g.b, g.c_mat).delta;
        RatVec zmin = min_support_general(g, s.ip_value);
        GeneralCertificate cert = repair_general(g, s.x_star, zmin, s.ip_value, dg);
        CHECK(cert.chain_ok);
        CHECK(cert.all_pass);

        Rat true_dist =
            measure_true_proximity_general(g, s.x_star, s.ip_value, zmin).distance;
        CHECK(true_dist <= cert.l1_distance);
        CHECK(compare_bound(true_dist, bound_cor7(g.m(), g.n(), g.t(), g.d(), dg), true).pass);
    }
    CHECK(done == 12);
}

TEST_CASE("repair_general t=d=0 agrees with the standard repair") {
    for (uint64_t seed = 3200; seed < 3220; ++seed) {
        StandardInstance inst = gen_random(seed, 1, 3, 4);
        IpResult ip = ip_solve(inst);
        if (ip.status != SolveStatus::Optimal) continue;
        LpVertex v = *lp_solve(inst).vertex;
        MinSupportResult ms = min_support(inst, ip.solution->objective);
        DeltaReport rep = delta_report(inst.a);
        ProximityCertificate std_cert =
            repair(inst, v, ms.solution.z, ip.solution->objective, rep);

        GeneralInstance g;
        g.a = inst.a;
        g.b = IntMatrix(1, 0);
        g.c_mat = IntMatrix(0, 0);
        g.b1 = inst.b;
        g.b2 = IntVec{};
        g.c = inst.c;
        GeneralCertificate gen_cert =
            repair_general(g, v.x, ms.solution.z, ip.solution->objective, rep.delta);
        CHECK(gen_cert.l1_distance == std_cert.l1_distance);
        CHECK(gen_cert.z_star == std_cert.z_star);
    }
}

TEST_CASE("repair_general trivial when x* is integral") {
    GeneralInstance g;
    g.a = IntMatrix{{1, 0}};
    g.b = IntMatrix{{1}};
    g.c_mat = IntMatrix{{1}};
    g.b1 = IntVec{2};
    g.b2 = IntVec{5};
    g.c = IntVec{-1, -1, -1};
    RatVec pt{Rat(2), Rat(0), Rat(0)};
    GeneralCertificate cert = repair_general(g, pt, pt, Rat(-2), Int(1));
    CHECK(cert.l1_distance == 0);
}

TEST_CASE("certify_general_instance gate") {
    int done = 0;
    for (uint64_t seed = 3300; seed < 3360 && done < 8; ++seed) {
        GeneralInstance g;
        try {
            g = gen_random_general(seed, 1, 2, 2, 1, 3);
        } catch (const Error&) {
            continue;
        }
        GeneralCertifyOutcome oc;
        try {
            oc = certify_general_instance(g);
        } catch (const ValidationError&) {
            continue;  // infeasible/unbounded integer side
        }
        ++done;
        CHECK(oc.all_pass);
        CHECK(oc.true_distance <= oc.certificate.l1_distance);
    }
    CHECK(done == 8);
}
