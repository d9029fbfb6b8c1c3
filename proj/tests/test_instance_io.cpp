#include "proxcert/instance_io.hpp"
#include "proxcert/solvers.hpp"

#include <doctest.h>

using namespace proxcert;

TEST_CASE("minimal standard file round-trips") {
    std::string text = R"({"schema_version": 1, "form": "standard",
        "m": 1, "n": 2, "A": [[2, 3]], "b": [5], "c": [1, 1]})";
    AnyInstance inst = parse_instance_text(text);
    REQUIRE(inst.standard.has_value());
    CHECK(inst.standard->a == IntMatrix{{2, 3}});
    CHECK(inst.standard->b == IntVec{5});

    std::string canon = serialize_instance(inst);
    AnyInstance again = parse_instance_text(canon);
    CHECK(again.standard->a == inst.standard->a);
    CHECK(serialize_instance(again) == canon);  // canonical fixed point
}

TEST_CASE("big integers survive losslessly") {
    std::string big = "123456789012345678901";
    std::string text = std::string(R"({"schema_version": 1, "form": "standard",
        "m": 1, "n": 2, "A": [[")") + big + R"(", "1"]], "b": ["0"], "c": ["1", "1"]})";
    AnyInstance inst = parse_instance_text(text);
    CHECK(inst.standard->a(0, 0) == Int(big));
    CHECK(serialize_instance(inst).find(big) != std::string::npos);
}

TEST_CASE("validation errors name the invariant") {
    std::string rank_deficient = R"({"schema_version": 1, "form": "standard",
        "m": 2, "n": 2, "A": [[1, 2], [2, 4]], "b": [3, 6], "c": [1, 1]})";
    CHECK_THROWS_WITH_AS(parse_instance_text(rank_deficient), "rank(A) < m", ValidationError);

    CHECK_THROWS_AS(parse_instance_text("{not json"), ParseError);
    CHECK_THROWS_AS(parse_instance_text(R"({"schema_version": 1, "form": "weird"})"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance_text(
                        R"({"schema_version": 2, "form": "standard", "m": 1, "n": 1})"),
                    ParseError);
}

TEST_CASE("mip file with one-based marks") {
    std::string text = R"({"schema_version": 1, "form": "mip", "m": 1, "n": 2,
        "A": [[2, 3]], "b": [5], "c": [1, 1], "integral_indices": [1]})";
    AnyInstance inst = parse_instance_text(text);
    REQUIRE(inst.mip.has_value());
    CHECK(inst.mip->integral_indices == std::set<int>{0});
    std::string canon = serialize_instance(inst);
    CHECK(parse_instance_text(canon).mip->integral_indices == std::set<int>{0});
}

TEST_CASE("general form file") {
    std::string text = R"({"schema_version": 1, "form": "general",
        "m": 1, "n": 2, "t": 1, "d": 1,
        "A": [[1, 1]], "B": [[2]], "C": [[1]], "b1": [4], "b2": [1], "c": [0, 0, 1]})";
    AnyInstance inst = parse_instance_text(text);
    REQUIRE(inst.general.has_value());
    CHECK(inst.general->d() == 1);
    AnyInstance again = parse_instance_text(serialize_instance(inst));
    CHECK(again.general->c_mat == inst.general->c_mat);
}

TEST_CASE("round-trip property over random instances") {
    for (uint64_t seed = 50; seed < 70; ++seed) {
        AnyInstance any;
        any.form = "mip";
        any.mip = gen_random_mip(seed, 2, 4, 5);
        any.metadata["seed"] = std::to_string(seed);
        std::string text = serialize_instance(any);
        AnyInstance back = parse_instance_text(text);
        CHECK(back.mip->base.a == any.mip->base.a);
        CHECK(back.mip->base.b == any.mip->base.b);
        CHECK(back.mip->base.c == any.mip->base.c);
        CHECK(back.mip->integral_indices == any.mip->integral_indices);
        CHECK(back.metadata == any.metadata);
        CHECK(serialize_instance(back) == text);
    }
}

TEST_CASE("gen_random determinism and guarantees") {
    StandardInstance a = gen_random(77, 2, 5, 5);
    StandardInstance b = gen_random(77, 2, 5, 5);
    CHECK(a.a == b.a);
    CHECK(a.b == b.b);
    CHECK(a.c == b.c);
    CHECK(gen_random(78, 2, 5, 5).a == gen_random(78, 2, 5, 5).a);

    for (uint64_t seed = 200; seed < 230; ++seed) {
        StandardInstance inst = gen_random(seed, 2, 4, 5);
        AssumptionReport rep = check_assumptions(inst);
        CHECK(rep.all_hold());
    }
}

TEST_CASE("gen_nonvertex_demo") {
    NonVertexDemo even = gen_nonvertex_demo(2);
    CHECK(even.instance.a == IntMatrix{{1, -1}});
    CHECK(even.instance.b == IntVec{0});
    CHECK(even.point == RatVec{Rat(1, 2), Rat(1, 2)});
    // Every c = 0 feasible point is optimal; the nearest integer point
    // is at L1 distance n/2 (oracle-checked).
    OracleResult r2 = ip_solve_oracle(even.instance, IntVec{3, 3});
    Rat best;
    bool first = true;
    for (const IntVec& z : r2.optimal_set) {
        RatVec diff(z.size());
        for (size_t j = 0; j < z.size(); ++j) diff[j] = Rat(z[j]) - even.point[j];
        Rat d = l1_norm(diff);
        if (first || d < best) { best = d; first = false; }
    }
    CHECK(best == Rat(1));

    NonVertexDemo four = gen_nonvertex_demo(4);
    OracleResult r4 = ip_solve_oracle(four.instance, IntVec{2, 2, 2, 2});
    first = true;
    for (const IntVec& z : r4.optimal_set) {
        RatVec diff(z.size());
        for (size_t j = 0; j < z.size(); ++j) diff[j] = Rat(z[j]) - four.point[j];
        Rat d = l1_norm(diff);
        if (first || d < best) { best = d; first = false; }
    }
    CHECK(best == Rat(2));

    // Odd n still produces an integral right-hand side.
    NonVertexDemo odd = gen_nonvertex_demo(3);
    RatVec ax = to_rat(odd.instance.a).mul(odd.point);
    CHECK(ax[0] == Rat(odd.instance.b[0]));
}

TEST_CASE("frontier_search") {
    FrontierResult empty = frontier_search(1, 1, 2, 5, 0);
    CHECK(empty.rows.empty());

    // m = 1 search finds a ratio >= 1 instance within a modest budget.
    FrontierResult fr = frontier_search(20260801, 1, 2, 5, 40, 5);
    REQUIRE(!fr.rows.empty());
    CHECK(fr.rows.front().ratio_delta >= 1);
    // Ranking is monotone in the ratio.
    for (size_t i = 1; i < fr.rows.size(); ++i)
        CHECK(fr.rows[i - 1].ratio_delta >= fr.rows[i].ratio_delta);
    // Deterministic per seed.
    FrontierResult fr2 = frontier_search(20260801, 1, 2, 5, 40, 5);
    CHECK(fr2.rows.front().seed == fr.rows.front().seed);
    CHECK(fr2.rows.front().distance == fr.rows.front().distance);
}
