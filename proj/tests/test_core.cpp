#include <catch2/catch_amalgamated.hpp>

#include "minimax/analysis.hpp"
#include "minimax/joint_point.hpp"
#include "minimax/problem.hpp"
#include "minimax/problems.hpp"
#include "minimax/rng.hpp"

using namespace minimax;

namespace {

JointPoint scalar_point(double x, double y) {
    Eigen::VectorXd vx(1), vy(1);
    vx << x;
    vy << y;
    return JointPoint(vx, vy);
}

}  // namespace

TEST_CASE("squared_distance sums per-block squared norms") {
    CHECK(squared_distance(scalar_point(1, 1), scalar_point(0, 0)) == 2.0);
    CHECK(squared_distance(scalar_point(0.5, -3), scalar_point(0.5, -3)) == 0.0);

    Eigen::VectorXd x(2), y(2);
    x << 3, 0;
    y << 4, 0;
    JointPoint z(x, y);
    JointPoint origin(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2));
    CHECK(squared_distance(z, origin) == 25.0);
}

TEST_CASE("squared_distance rejects dimension mismatch") {
    JointPoint a(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(1));
    JointPoint b(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(2));
    CHECK_THROWS_AS(squared_distance(a, b), InputError);
}

TEST_CASE("JointPoint requires nonempty blocks") {
    CHECK_THROWS_AS(JointPoint(Eigen::VectorXd(), Eigen::VectorXd::Zero(1)), InputError);
}

TEST_CASE("phi on the scalar bilinear instance") {
    ScalarBilinearQuadratic problem(1.0, 2.0);

    Eigen::VectorXd g = phi(problem, scalar_point(1, 1));
    CHECK(g[0] == 3.0);
    CHECK(g[1] == -1.0);

    g = phi(problem, scalar_point(0, 1));
    CHECK(g[0] == 2.0);
    CHECK(g[1] == 1.0);

    // saddle point is the unique zero
    CHECK(phi(problem, problem.saddle()).norm() == 0.0);
}

TEST_CASE("phi rejects mismatched dimensions") {
    ScalarBilinearQuadratic problem(1.0, 2.0);
    JointPoint bad(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(1));
    CHECK_THROWS_AS(phi(problem, bad), InputError);
}

TEST_CASE("phi is deterministic") {
    GeneralQuadraticSaddle problem = random_quadratic(3, 3, 2, 0.5, 3.0);
    JointPoint z(Eigen::VectorXd::Constant(3, 0.7), Eigen::VectorXd::Constant(2, -1.3));
    Eigen::VectorXd g1 = phi(problem, z);
    Eigen::VectorXd g2 = phi(problem, z);
    CHECK(g1 == g2);  // bit-identical
}

TEST_CASE("RegularityConstants aggregates") {
    RegularityConstants rc{1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
    CHECK(rc.mu() == 1.0);
    CHECK(rc.L() == 6.0);
    CHECK(rc.kappa() == 6.0);
    rc.validate();

    RegularityConstants bad{0.0, 1.0, 1.0, 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(bad.validate(), InputError);
}

TEST_CASE("monotonicity sandwich holds on random pairs") {
    // 1000 random pairs per problem, checked via the analysis module
    ScalarBilinearQuadratic eq18(1.0, 2.0);
    CHECK(check_lemma1(eq18, 1000, 11).pass);

    for (std::uint64_t seed : {1u, 2u, 3u}) {
        GeneralQuadraticSaddle q = random_quadratic(seed, 4, 3, 0.5, 5.0, true);
        CHECK(check_lemma1(q, 1000, seed * 100).pass);
        CHECK(check_lemma2(q, 1000, seed * 100 + 1).pass);
    }
}
