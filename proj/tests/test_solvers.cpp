#include <cmath>
#include <memory>

#include <catch2/catch_amalgamated.hpp>

#include "minimax/analysis.hpp"
#include "minimax/problems.hpp"
#include "minimax/solvers.hpp"

using namespace minimax;

namespace {

std::shared_ptr<const SaddleProblem> eq18(double mu = 1.0, double L = 2.0) {
    return std::make_shared<ScalarBilinearQuadratic>(mu, L);
}

JointPoint scalar_point(double x, double y) {
    Eigen::VectorXd vx(1), vy(1);
    vx << x;
    vy << y;
    return JointPoint(vx, vy);
}

NoisyOracle exact_oracle(std::shared_ptr<const SaddleProblem> p) {
    return NoisyOracle(std::move(p), NoiseModel{NoiseKind::per_coordinate_gaussian, 0.0}, 0);
}

}  // namespace

TEST_CASE("gda_step hand values") {
    NoisyOracle oracle = exact_oracle(eq18());
    GdaState state{scalar_point(1, 1), 0};
    GdaState next = gda_step(state, oracle, 0.1);
    CHECK(next.z.x[0] == Catch::Approx(0.7).margin(1e-15));
    CHECK(next.z.y[0] == Catch::Approx(1.1).margin(1e-15));
    CHECK(next.global_iter == 1);
}

TEST_CASE("gda_step fixed point at the saddle") {
    NoisyOracle oracle = exact_oracle(eq18());
    GdaState state{scalar_point(0, 0), 5};
    GdaState next = gda_step(state, oracle, 0.3);
    CHECK(next.z.x[0] == 0.0);
    CHECK(next.z.y[0] == 0.0);
}

TEST_CASE("gda_step with the minimizing stepsize halves the squared norm at kappa = 1") {
    NoisyOracle oracle = exact_oracle(eq18(1.0, 1.0));
    GdaState state{scalar_point(1, 1), 0};
    GdaState next = gda_step(state, oracle, 0.5);
    CHECK(next.z.x[0] == Catch::Approx(0.0).margin(1e-15));
    CHECK(next.z.y[0] == Catch::Approx(1.0).margin(1e-15));
    const double before = state.z.x.squaredNorm() + state.z.y.squaredNorm();
    const double after = next.z.x.squaredNorm() + next.z.y.squaredNorm();
    CHECK(after / before == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("ogda_step hand values and fixed points") {
    NoisyOracle oracle = exact_oracle(eq18());

    OgdaState state{scalar_point(1, 1), scalar_point(1, 1), 0};
    OgdaState next = ogda_step(state, oracle, 0.1);
    CHECK(next.z.x[0] == Catch::Approx(0.7).margin(1e-15));
    CHECK(next.z.y[0] == Catch::Approx(1.1).margin(1e-15));
    CHECK(next.w.x[0] == Catch::Approx(0.71).margin(1e-15));
    CHECK(next.w.y[0] == Catch::Approx(1.03).margin(1e-15));

    OgdaState at_saddle{scalar_point(0, 0), scalar_point(0, 0), 0};
    OgdaState still = ogda_step(at_saddle, oracle, 0.1);
    CHECK(still.w.x[0] == 0.0);
    CHECK(still.z.y[0] == 0.0);

    // alpha = 0 leaves the state unchanged
    OgdaState frozen = ogda_step(state, oracle, 0.0);
    CHECK(frozen.w.x[0] == 1.0);
    CHECK(frozen.z.y[0] == 1.0);
}

TEST_CASE("oracle call counts per step") {
    auto problem = eq18();
    NoisyOracle a(problem, NoiseModel{NoiseKind::per_coordinate_gaussian, 1.0}, 5);
    NoisyOracle b(problem, NoiseModel{NoiseKind::per_coordinate_gaussian, 1.0}, 5);

    // gda consumes one draw; after one gda step, the next sample from `a`
    // equals the second sample from `b`.
    GdaState gs{scalar_point(1, 1), 0};
    gda_step(gs, a, 0.01);
    const JointPoint probe = scalar_point(2, 2);
    b.sample_phi(probe);
    CHECK(a.sample_phi(probe) == b.sample_phi(probe));

    // ogda consumes exactly two draws
    NoisyOracle c(problem, NoiseModel{NoiseKind::per_coordinate_gaussian, 1.0}, 5);
    NoisyOracle d(problem, NoiseModel{NoiseKind::per_coordinate_gaussian, 1.0}, 5);
    OgdaState os{scalar_point(1, 1), scalar_point(1, 1), 0};
    ogda_step(os, c, 0.01);
    d.sample_phi(probe);
    d.sample_phi(probe);
    CHECK(c.sample_phi(probe) == d.sample_phi(probe));
}

TEST_CASE("run_stage satisfies the (1 - alpha mu)^n deterministic contraction") {
    const double mu = 1.0, L = 2.0;
    const double alpha = mu / (4.0 * L * L);
    NoisyOracle oracle = exact_oracle(eq18(mu, L));
    Trace trace;
    GdaState state{scalar_point(1, 1), 0};
    const double initial = 2.0;
    state = run_stage(std::move(state), oracle, alpha, 100, 1, trace);

    CHECK(trace.size() == 100);
    const double final_sq = trace.back().sq_dist_to_saddle.value();
    CHECK(final_sq <= std::pow(1.0 - alpha * mu, 100) * initial);

    // trace bookkeeping
    for (std::size_t i = 0; i < trace.size(); ++i) {
        CHECK(trace[i].global_iter == static_cast<long>(i) + 1);
        CHECK(trace[i].stage == 1);
        CHECK(trace[i].inner_iter == static_cast<long>(i) + 1);
        CHECK(trace[i].alpha == alpha);
    }
}

TEST_CASE("run_stage with n_steps = 1 equals one step") {
    NoisyOracle oracle1 = exact_oracle(eq18());
    NoisyOracle oracle2 = exact_oracle(eq18());
    Trace trace;
    GdaState a = run_stage(GdaState{scalar_point(1, 1), 0}, oracle1, 0.1, 1, 1, trace);
    GdaState b = gda_step(GdaState{scalar_point(1, 1), 0}, oracle2, 0.1);
    CHECK(a.z.x == b.z.x);
    CHECK(a.z.y == b.z.y);
    CHECK(trace.size() == 1);
}

TEST_CASE("deterministic GDA contracts by exactly (1-alpha mu)^2 + alpha^2 L^2") {
    const double mu = 1.0, L = 2.0;
    for (double alpha : {0.01, 0.0625, 0.2}) {
        NoisyOracle oracle = exact_oracle(eq18(mu, L));
        const double factor = gda_quadratic_exact_factor(mu, L, alpha);
        GdaState state{scalar_point(0.3, -0.8), 0};
        for (int i = 0; i < 20; ++i) {
            const double before = state.z.x.squaredNorm() + state.z.y.squaredNorm();
            state = gda_step(state, oracle, alpha);
            const double after = state.z.x.squaredNorm() + state.z.y.squaredNorm();
            CHECK(after / before == Catch::Approx(factor).margin(1e-10));
        }
    }
}

TEST_CASE("OGDA with alpha = 1/(8L) converges linearly on quadratics") {
    for (std::uint64_t seed : {2u, 6u}) {
        auto problem =
            std::make_shared<GeneralQuadraticSaddle>(random_quadratic(seed, 3, 3, 1.0, 4.0, true));
        const double L = problem->constants().L();
        NoisyOracle oracle = exact_oracle(problem);
        const JointPoint zstar = problem->saddle();
        OgdaState state{JointPoint(Eigen::VectorXd::Ones(3), Eigen::VectorXd::Ones(3)),
                        JointPoint(Eigen::VectorXd::Ones(3), Eigen::VectorXd::Ones(3)), 0};
        const double alpha = 1.0 / (8.0 * L);
        // O(kappa log(1/eps)) iterations suffice; give a generous constant
        const long budget =
            static_cast<long>(200.0 * problem->constants().kappa() * std::log(1e8));
        bool reached = false;
        for (long i = 0; i < budget && !reached; ++i) {
            state = ogda_step(state, oracle, alpha);
            reached = squared_distance(state.w, zstar) < 1e-8;
        }
        CHECK(reached);
    }
}

TEST_CASE("divergence raises a structured error") {
    // Far above the safe bound GDA on the bilinear instance blows up.
    NoisyOracle oracle = exact_oracle(eq18(1.0, 10.0));
    Trace trace;
    GdaState state{scalar_point(1, 1), 0};
    CHECK_THROWS_AS(run_stage(std::move(state), oracle, 1.0, 2000, 1, trace), DivergenceError);
}

TEST_CASE("run_multistage agrees with run_stage composition and the concatenation map") {
    auto problem = eq18();
    StageSchedule schedule = mgda_schedule(1.0, 2.0, 2.0, 10, 3);

    NoisyOracle o1(problem, NoiseModel{NoiseKind::per_coordinate_gaussian, 0.5}, 77);
    MultistageResult result = run_multistage(scalar_point(1, 1), o1, schedule, Method::gda);

    CHECK(result.trace.size() == static_cast<std::size_t>(schedule.total_length()) + 1);
    CHECK(result.trace.front().global_iter == 0);

    // stage/inner indices in the trace match locate()
    for (const TraceRow& row : result.trace) {
        if (row.global_iter == 0) continue;
        auto [stage, inner] = locate(schedule, row.global_iter);
        CHECK(row.stage == stage);
        CHECK(row.inner_iter == inner);
        CHECK(row.alpha == schedule.stages[static_cast<std::size_t>(stage) - 1].alpha);
    }

    // single-stage schedule reduces to run_stage
    StageSchedule one;
    one.stages = {{0.05, 25}};
    NoisyOracle o2(problem, NoiseModel{NoiseKind::per_coordinate_gaussian, 0.5}, 42);
    NoisyOracle o3(problem, NoiseModel{NoiseKind::per_coordinate_gaussian, 0.5}, 42);
    MultistageResult multi = run_multistage(scalar_point(1, 1), o2, one, Method::gda);
    Trace trace;
    GdaState direct = run_stage(GdaState{scalar_point(1, 1), 0}, o3, 0.05, 25, 1, trace);
    CHECK(multi.final_point.x == direct.z.x);
    CHECK(multi.final_point.y == direct.z.y);
}

TEST_CASE("ogda trace reports the w sequence") {
    auto problem = eq18();
    StageSchedule one;
    one.stages = {{0.0625, 30}};
    NoisyOracle o1(problem, NoiseModel{NoiseKind::per_coordinate_gaussian, 0.0}, 0);
    NoisyOracle o2(problem, NoiseModel{NoiseKind::per_coordinate_gaussian, 0.0}, 0);

    MultistageResult result = run_multistage(scalar_point(1, 1), o1, one, Method::ogda);
    OgdaState state{scalar_point(1, 1), scalar_point(1, 1), 0};
    for (int i = 0; i < 30; ++i) state = ogda_step(state, o2, 0.0625);
    CHECK(result.final_point.x == state.w.x);
    CHECK(result.trace.back().sq_dist_to_saddle.value() ==
          squared_distance(state.w, problem->saddle()));
}
