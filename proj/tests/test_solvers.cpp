#include "proxcert/instance_io.hpp"
#include "proxcert/solvers.hpp"

#include <doctest.h>

using namespace proxcert;

namespace {

StandardInstance make_std(IntMatrix a, IntVec b, IntVec c) {
    StandardInstance inst;
    inst.a = std::move(a);
    inst.b = std::move(b);
    inst.c = std::move(c);
    return inst;
}

StandardInstance knapsack() {
    return make_std(IntMatrix{{2, 3}}, IntVec{5}, IntVec{1, 1});
}

MipInstance with_marks(StandardInstance s, std::set<int> marks) {
    MipInstance m;
    m.base = std::move(s);
    m.integral_indices = std::move(marks);
    return m;
}

} // namespace

TEST_CASE("lp_solve examples") {
    // Unique feasible point.
    LpResult r1 = lp_solve(make_std(IntMatrix::identity(2), IntVec{1, 2}, IntVec{-3, 7}));
    REQUIRE(r1.status == SolveStatus::Optimal);
    CHECK(r1.vertex->x == RatVec{Rat(1), Rat(2)});

    // Two basic solutions (5/2, 0) and (0, 5/3); the first wins on c=(1,1).
    LpResult r2 = lp_solve(knapsack());
    REQUIRE(r2.status == SolveStatus::Optimal);
    CHECK(r2.vertex->x == RatVec{Rat(5, 2), Rat(0)});
    CHECK(r2.vertex->objective == Rat(5, 2));
    CHECK(r2.vertex->basis == std::vector<int>{0});

    LpResult r3 = lp_solve(make_std(IntMatrix{{1, -1}}, IntVec{0}, IntVec{1, 1}));
    CHECK(r3.status == SolveStatus::Unbounded);
    REQUIRE(!r3.ray.empty());
    // The ray preserves feasibility and improves the objective.
    CHECK(r3.ray[0] - r3.ray[1] == 0);
    CHECK(r3.ray[0] + r3.ray[1] > 0);

    LpResult r4 = lp_solve(make_std(IntMatrix{{2, 2}}, IntVec{-1}, IntVec{1, 1}));
    CHECK(r4.status == SolveStatus::Infeasible);

    CHECK_THROWS_AS(lp_solve(make_std(IntMatrix{{1, 2}, {2, 4}}, IntVec{3, 6}, IntVec{1, 1})),
                    RankError);
}

TEST_CASE("lp vertex invariants on random instances") {
    for (uint64_t seed = 1; seed <= 30; ++seed) {
        StandardInstance inst = gen_random(seed, 2, 5, 5);
        LpResult r = lp_solve(inst);
        REQUIRE(r.status == SolveStatus::Optimal);
        const LpVertex& v = *r.vertex;
        CHECK(static_cast<int>(v.basis.size()) == inst.m());
        CHECK(static_cast<int>(support(v.x).size()) <= inst.m());
        CHECK(to_rat(inst.a).mul(v.x) == to_rat(inst.b));
    }
}

TEST_CASE("ip_solve examples") {
    IpResult r1 = ip_solve(make_std(IntMatrix::identity(2), IntVec{1, 2}, IntVec{1, 1}));
    REQUIRE(r1.status == SolveStatus::Optimal);
    CHECK(r1.solution->integral() == IntVec{1, 2});

    IpResult r2 = ip_solve(knapsack());
    REQUIRE(r2.status == SolveStatus::Optimal);
    CHECK(r2.solution->integral() == IntVec{1, 1});
    CHECK(r2.solution->objective == 2);

    // Parity: 2z = 1 has no integer solution though the LP is feasible.
    IpResult r3 = ip_solve(make_std(IntMatrix{{2}}, IntVec{1}, IntVec{1}));
    CHECK(r3.status == SolveStatus::Infeasible);

    // LP unbounded + integer-feasible = unbounded.
    IpResult r4 = ip_solve(make_std(IntMatrix{{1, -1}}, IntVec{0}, IntVec{1, 1}));
    CHECK(r4.status == SolveStatus::Unbounded);
}

TEST_CASE("ip_solve_oracle examples") {
    OracleResult r = ip_solve_oracle(knapsack(), IntVec{3, 2});
    REQUIRE(r.optimal_set.size() == 1);
    CHECK(r.optimal_set[0] == IntVec{1, 1});
    CHECK(r.objective == 2);

    // b = 0 with c <= 0: zero is the unique optimum in the box.
    OracleResult r2 = ip_solve_oracle(make_std(IntMatrix{{1, 1}}, IntVec{0}, IntVec{-1, -1}),
                                      IntVec{3, 3});
    REQUIRE(r2.optimal_set.size() == 1);
    CHECK(r2.optimal_set[0] == IntVec{0, 0});

    OracleResult r3 = ip_solve_oracle(make_std(IntMatrix{{2}}, IntVec{1}, IntVec{1}), IntVec{5});
    CHECK(r3.optimal_set.empty());

    EnumerationCaps tiny;
    tiny.node_cap = 2;
    CHECK_THROWS_AS(ip_solve_oracle(knapsack(), IntVec{3, 2}, tiny), ResourceError);
}

TEST_CASE("ip_solve agrees with the oracle on random instances") {
    int done = 0;
    for (uint64_t seed = 100; seed < 200 && done < 40; ++seed) {
        int m = 1 + static_cast<int>(seed % 2);
        StandardInstance inst = gen_random(seed, m, m + 2, 4);
        IpResult ip = ip_solve(inst);
        if (ip.status != SolveStatus::Optimal) continue;

        LpVertex v = *lp_solve(inst).vertex;
        Int delta = delta_k_exact(inst.a, m).first;
        IntVec box = polytope_box(inst, proximity_search_box(inst, v, delta));
        OracleResult oracle;
        try {
            oracle = ip_solve_oracle(inst, box);
        } catch (const ResourceError&) {
            continue;  // unbounded coordinate keeps the box huge
        }
        REQUIRE(!oracle.optimal_set.empty());
        CHECK(oracle.objective == ip.solution->objective);
        ++done;
    }
    CHECK(done == 40);
}

TEST_CASE("mip_solve examples and reductions") {
    // All-integral marks = pure integer answer.
    IpResult all = mip_solve(with_marks(knapsack(), {0, 1}));
    REQUIRE(all.status == SolveStatus::Optimal);
    CHECK(all.solution->objective == 2);

    // No marks = LP answer.
    IpResult none = mip_solve(with_marks(knapsack(), {}));
    REQUIRE(none.status == SolveStatus::Optimal);
    CHECK(none.solution->objective == Rat(5, 2));

    // Mark only z1: optimal is (2, 1/3) with value 7/3.
    IpResult half = mip_solve(with_marks(knapsack(), {0}));
    REQUIRE(half.status == SolveStatus::Optimal);
    CHECK(half.solution->z == RatVec{Rat(2), Rat(1, 3)});
    CHECK(half.solution->objective == Rat(7, 3));
}

TEST_CASE("mip reductions on random instances") {
    for (uint64_t seed = 300; seed < 315; ++seed) {
        StandardInstance inst = gen_random(seed, 2, 4, 4);
        std::set<int> all{0, 1, 2, 3};
        IpResult pure = ip_solve(inst);
        IpResult as_mip = mip_solve(with_marks(inst, all));
        REQUIRE(pure.status == as_mip.status);
        if (pure.status == SolveStatus::Optimal)
            CHECK(pure.solution->objective == as_mip.solution->objective);

        IpResult lp_like = mip_solve(with_marks(inst, {}));
        LpResult lp = lp_solve(inst);
        REQUIRE(lp_like.status == SolveStatus::Optimal);
        CHECK(lp_like.solution->objective == lp.vertex->objective);
    }
}

TEST_CASE("min_support examples") {
    // All optima have value 2; a single column suffices.
    StandardInstance inst = make_std(IntMatrix{{1, 1, 1}}, IntVec{2}, IntVec{1, 1, 1});
    MinSupportResult r = min_support(inst, Rat(2));
    CHECK(r.support_set == std::vector<int>{0});
    CHECK(r.solution.z == RatVec{Rat(2), Rat(0), Rat(0)});
    CHECK(r.certified);

    // Zero optimum: empty support.
    StandardInstance zero = make_std(IntMatrix{{1, 1}}, IntVec{0}, IntVec{-1, -1});
    MinSupportResult rz = min_support(zero, Rat(0));
    CHECK(rz.support_set.empty());

    // Unique solution with two nonzeros.
    StandardInstance idl = make_std(IntMatrix::identity(2), IntVec{1, 2}, IntVec{1, 1});
    CHECK(min_support(idl, Rat(3)).support_set.size() == 2);

    // Knapsack: (1,1) is the unique optimum.
    CHECK(min_support(knapsack(), Rat(2)).support_set.size() == 2);
}

TEST_CASE("min_support matches the oracle optimal set") {
    int done = 0;
    for (uint64_t seed = 400; seed < 500 && done < 30; ++seed) {
        StandardInstance inst = gen_random(seed, 2, 4, 3);
        IpResult ip = ip_solve(inst);
        if (ip.status != SolveStatus::Optimal) continue;
        MinSupportResult ms = min_support(inst, ip.solution->objective);
        REQUIRE(ms.certified);

        LpVertex v = *lp_solve(inst).vertex;
        Int delta = delta_k_exact(inst.a, 2).first;
        OracleResult oracle;
        try {
            oracle = ip_solve_oracle(inst,
                                     polytope_box(inst, proximity_search_box(inst, v, delta)));
        } catch (const ResourceError&) {
            continue;
        }
        size_t best = SIZE_MAX;
        for (const IntVec& z : oracle.optimal_set) best = std::min(best, support(z).size());
        CHECK(ms.support_set.size() == best);
        ++done;
    }
    CHECK(done == 30);
}

TEST_CASE("min_support mixed") {
    // Continuous z2 keeps value 7/3 reachable only with both columns.
    MipInstance mip = with_marks(knapsack(), {0});
    MinSupportResult r = min_support(mip, Rat(7, 3));
    CHECK(r.support_set.size() == 2);
}

TEST_CASE("check_assumptions") {
    AssumptionReport r1 = check_assumptions(make_std(IntMatrix{{2}}, IntVec{1}, IntVec{1}));
    CHECK(r1.rank_ok);
    CHECK(r1.lp_feasible);
    CHECK(r1.lp_bounded);
    CHECK_FALSE(r1.ip_feasible);
    CHECK(r1.first_failure() == "IP infeasible");

    AssumptionReport r2 =
        check_assumptions(make_std(IntMatrix{{1, -1}}, IntVec{0}, IntVec{1, 1}));
    CHECK_FALSE(r2.lp_bounded);
    CHECK(r2.first_failure() == "LP unbounded");

    AssumptionReport r3 = check_assumptions(knapsack());
    CHECK(r3.all_hold());
    StandardInstance k = knapsack();
    CHECK(to_rat(k.a).mul(to_rat(*r3.ip_witness)) == to_rat(k.b));
}

TEST_CASE("measure_true_proximity examples") {
    StandardInstance inst = knapsack();
    LpVertex v = *lp_solve(inst).vertex;
    ProximityMeasurement meas = measure_true_proximity(inst, v.x, Rat(2), IntVec{1, 1});
    CHECK(meas.distance == Rat(5, 2));
    CHECK(meas.nearest == RatVec{Rat(1), Rat(1)});

    // Integral vertex: distance 0.
    StandardInstance idl = make_std(IntMatrix::identity(2), IntVec{1, 2}, IntVec{1, 1});
    LpVertex vi = *lp_solve(idl).vertex;
    CHECK(measure_true_proximity(idl, vi.x, Rat(3), IntVec{1, 2}).distance == 0);
}

TEST_CASE("measure_true_proximity equals brute force over the oracle set") {
    int done = 0;
    for (uint64_t seed = 500; seed < 600 && done < 30; ++seed) {
        StandardInstance inst = gen_random(seed, 2, 4, 3);
        IpResult ip = ip_solve(inst);
        if (ip.status != SolveStatus::Optimal) continue;
        LpVertex v = *lp_solve(inst).vertex;
        Int delta = delta_k_exact(inst.a, 2).first;
        OracleResult oracle;
        try {
            oracle = ip_solve_oracle(inst,
                                     polytope_box(inst, proximity_search_box(inst, v, delta)));
        } catch (const ResourceError&) {
            continue;
        }

        Rat best;
        bool first = true;
        for (const IntVec& z : oracle.optimal_set) {
            RatVec diff(z.size());
            for (size_t j = 0; j < z.size(); ++j) diff[j] = Rat(z[j]) - v.x[j];
            Rat dist = l1_norm(diff);
            if (first || dist < best) { best = dist; first = false; }
        }
        Rat measured = measure_true_proximity(inst, v.x, ip.solution->objective,
                                              ip.solution->integral())
                           .distance;
        CHECK(measured == best);
        ++done;
    }
    CHECK(done == 30);
}

TEST_CASE("measure_true_proximity_mip matches the pure measurement on full marks") {
    for (uint64_t seed = 700; seed < 710; ++seed) {
        StandardInstance inst = gen_random(seed, 2, 4, 3);
        IpResult ip = ip_solve(inst);
        REQUIRE(ip.status == SolveStatus::Optimal);
        LpVertex v = *lp_solve(inst).vertex;
        Rat pure = measure_true_proximity(inst, v.x, ip.solution->objective,
                                          ip.solution->integral())
                       .distance;
        MipInstance mip = with_marks(inst, {0, 1, 2, 3});
        Rat mixed = measure_true_proximity_mip(mip, v.x, ip.solution->objective,
                                               ip.solution->z)
                        .distance;
        CHECK(pure == mixed);
    }
}

TEST_CASE("node limit reports resource status") {
    SolveLimits tight;
    tight.max_nodes = 1;
    StandardInstance inst = gen_random(9001, 2, 5, 5);
    IpResult r = ip_solve(inst, tight);
    CHECK(r.status == SolveStatus::ResourceLimit);
}
