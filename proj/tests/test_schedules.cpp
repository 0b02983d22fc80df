#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "minimax/schedule.hpp"

using namespace minimax;

TEST_CASE("M-GDA schedule matches the hand-computed values") {
    StageSchedule s = mgda_schedule(1.0, 2.0, 2.0, 20, 3);
    REQUIRE(s.num_stages() == 3);
    CHECK(s.stages[0].alpha == 1.0 / 16.0);
    CHECK(s.stages[0].n == 20);
    CHECK(s.stages[1].alpha == 1.0 / 64.0);
    CHECK(s.stages[1].n == 89);   // ceil(2 * 2^4 * 4 * log 2) = ceil(88.723)
    CHECK(s.stages[2].alpha == 1.0 / 128.0);
    CHECK(s.stages[2].n == 178);  // ceil(177.445)
    CHECK(s.cumulative_length(1) == 20);
    CHECK(s.cumulative_length(2) == 109);
    CHECK(s.cumulative_length(3) == 287);
}

TEST_CASE("M-OGDA schedule matches the hand-computed values") {
    StageSchedule s = mogda_schedule(1.0, 2.0, 2.0, 20, 3);
    CHECK(s.stages[0].alpha == 1.0 / 16.0);  // 1/(8L)
    CHECK(s.stages[1].alpha == 1.0 / 64.0);
    CHECK(s.stages[1].n == 89);   // ceil(2 * 2^5 * 2 * log 2)
    CHECK(s.stages[2].n == 178);
}

TEST_CASE("schedule constructors validate inputs") {
    CHECK_THROWS_AS(mgda_schedule(1.0, 2.0, 1.5, 20, 3), InputError);  // p < 2
    CHECK_THROWS_AS(mogda_schedule(1.0, 2.0, 1.0, 20, 3), InputError);
    CHECK_THROWS_AS(mgda_schedule(2.0, 1.0, 2.0, 20, 3), InputError);  // mu > L
    CHECK_THROWS_AS(mgda_schedule(1.0, 2.0, 2.0, 0, 3), InputError);
}

TEST_CASE("stepsizes halve from stage 2 onward") {
    StageSchedule s = mgda_schedule(1.0, 4.0, 3.0, 10, 6);
    for (std::size_t k = 1; k + 1 < s.num_stages(); ++k) {
        CHECK(s.stages[k + 1].alpha == s.stages[k].alpha / 2.0);
        CHECK(s.stages[k].alpha <= s.stages[k - 1].alpha);
    }
}

TEST_CASE("per-stage halving condition alpha_k n_k mu >= p log 2") {
    for (double p : {2.0, 3.5}) {
        for (double L : {1.0, 2.0, 7.0}) {
            StageSchedule g = mgda_schedule(1.0, L, p, 5, 7);
            StageSchedule o = mogda_schedule(1.0, L, p, 5, 7);
            for (std::size_t k = 1; k < g.num_stages(); ++k) {
                CHECK(g.stages[k].alpha * g.stages[k].n * 1.0 >= p * std::log(2.0) - 1e-12);
                CHECK(o.stages[k].alpha * o.stages[k].n * 1.0 >= p * std::log(2.0) - 1e-12);
            }
        }
    }
}

TEST_CASE("preset_n1 values") {
    // horizon-free: ceil(32 log 8) = 67 for both methods at p=2, kappa=2
    CHECK(preset_n1(Method::gda, PresetHorizonFree{2.0}, 1.0, 2.0) == 67);
    CHECK(preset_n1(Method::ogda, PresetHorizonFree{2.0}, 1.0, 2.0) == 67);

    CHECK(preset_n1(Method::gda, PresetBudget{1000, 2.0}, 1.0, 2.0) == 500);
    CHECK(preset_n1(Method::gda, PresetBudget{1001, 2.0}, 1.0, 2.0) == 501);

    // budget below the kappa threshold
    CHECK_THROWS_AS(preset_n1(Method::gda, PresetBudget{7, 2.0}, 1.0, 2.0), InputError);
    CHECK_THROWS_AS(preset_n1(Method::ogda, PresetBudget{3, 2.0}, 1.0, 2.0), InputError);
    CHECK_THROWS_AS(preset_n1(Method::gda, PresetBudget{1000, 1.5}, 1.0, 2.0), InputError);
    CHECK_THROWS_AS(preset_n1(Method::gda, PresetHorizonFree{1.0}, 1.0, 2.0), InputError);
}

TEST_CASE("locate maps stage boundaries correctly") {
    StageSchedule s = mgda_schedule(1.0, 2.0, 2.0, 10, 2);  // n = (10, 89)
    CHECK(locate(s, 10) == std::pair<int, long>{1, 10});
    CHECK(locate(s, 11) == std::pair<int, long>{2, 1});
    CHECK(locate(s, 99) == std::pair<int, long>{2, 89});
    CHECK_THROWS_AS(locate(s, 0), InputError);
    CHECK_THROWS_AS(locate(s, 100), InputError);
}

TEST_CASE("locate is a bijection (exhaustive round trip)") {
    StageSchedule s = mgda_schedule(1.0, 2.0, 2.0, 13, 5);
    long global = 0;
    for (std::size_t k = 0; k < s.num_stages(); ++k) {
        for (long m = 1; m <= s.stages[k].n; ++m) {
            ++global;
            auto [kk, mm] = locate(s, global);
            CHECK(kk == static_cast<int>(k) + 1);
            CHECK(mm == m);
            // inverse map recovers the global index
            CHECK(s.cumulative_length(static_cast<std::size_t>(kk) - 1) + mm == global);
        }
    }
    CHECK(global == s.total_length());
}

TEST_CASE("truncate_to_budget") {
    StageSchedule s = mgda_schedule(1.0, 2.0, 2.0, 10, 2);  // (10, 89)

    StageSchedule same = truncate_to_budget(s, s.total_length());
    CHECK(same.num_stages() == 2);
    CHECK(same.stages[1].n == 89);

    StageSchedule clipped = truncate_to_budget(s, 11);
    REQUIRE(clipped.num_stages() == 2);
    CHECK(clipped.stages[0].n == 10);
    CHECK(clipped.stages[1].n == 1);
    CHECK(clipped.stages[1].alpha == s.stages[1].alpha);

    StageSchedule mid = truncate_to_budget(s, 50);
    REQUIRE(mid.num_stages() == 2);
    CHECK(mid.stages[0].n == 10);
    CHECK(mid.stages[1].n == 40);

    CHECK_THROWS_AS(truncate_to_budget(s, 1000), InputError);
}

TEST_CASE("budgeted_schedule covers the budget exactly") {
    for (long budget : {67L, 100L, 1234L}) {
        StageSchedule s = budgeted_schedule(Method::gda, 1.0, 2.0, 2.0, 20, budget);
        CHECK(s.total_length() == budget);
        CHECK(s.provenance == ScheduleProvenance::budgeted);
    }
}

TEST_CASE("stepsize bound violations are detected") {
    StageSchedule ok = mgda_schedule(1.0, 2.0, 2.0, 10, 2);
    CHECK_FALSE(stepsize_bound_violation(ok, Method::gda, 1.0, 2.0).has_value());

    StageSchedule bad;
    bad.stages = {{0.5, 10}};  // alpha = 1/L, above mu/(4L^2) = 1/16
    auto violation = stepsize_bound_violation(bad, Method::gda, 1.0, 2.0);
    REQUIRE(violation.has_value());
    CHECK(*violation == 1.0 / 16.0);

    // the same stepsize is fine for ogda (bound 1/(8L) = 1/16 < 0.5? no: still bad)
    CHECK(stepsize_bound_violation(bad, Method::ogda, 1.0, 2.0).has_value());
    StageSchedule ogda_ok;
    ogda_ok.stages = {{1.0 / 16.0, 10}};
    CHECK_FALSE(stepsize_bound_violation(ogda_ok, Method::ogda, 1.0, 2.0).has_value());
}
