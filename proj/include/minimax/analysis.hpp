#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "minimax/errors.hpp"
#include "minimax/oracle.hpp"
#include "minimax/problem.hpp"
#include "minimax/rng.hpp"
#include "minimax/schedule.hpp"
#include "minimax/solvers.hpp"

namespace minimax {

/// Result of a numerical check of one of the structural inequalities.
struct LemmaReport {
    std::string lemma_id;
    long num_samples = 0;
    double max_violation = 0.0;  // positive means the inequality was broken by that much (scaled)
    bool pass = false;
};

namespace detail {

inline JointPoint sample_box_point(const JointPoint& center, double radius, CounterRng& rng) {
    JointPoint z = center;
    for (Eigen::Index i = 0; i < z.x.size(); ++i) {
        z.x[i] += rng.next_symmetric_uniform(radius);
    }
    for (Eigen::Index i = 0; i < z.y.size(); ++i) {
        z.y[i] += rng.next_symmetric_uniform(radius);
    }
    return z;
}

inline JointPoint box_center(const SaddleProblem& problem) {
    if (problem.has_known_saddle()) return problem.saddle();
    return JointPoint(Eigen::VectorXd::Zero(problem.m()), Eigen::VectorXd::Zero(problem.n()));
}

constexpr double kLemmaBoxRadius = 10.0;
constexpr double kLemmaTolerance = 1e-9;

}  // namespace detail

/// Strong monotonicity / cocoercivity sandwich:
/// mu ||dz||^2 <= <dPhi, dz> <= L ||dz||^2 on random pairs.
inline LemmaReport check_lemma1(const SaddleProblem& problem, long num_pairs,
                                std::uint64_t seed) {
    const double mu = problem.constants().mu();
    const double L = problem.constants().L();
    CounterRng rng = CounterRng::from_seed(seed);
    const JointPoint center = detail::box_center(problem);

    LemmaReport report;
    report.lemma_id = "lemma1";
    report.num_samples = num_pairs;
    for (long i = 0; i < num_pairs; ++i) {
        const JointPoint z = detail::sample_box_point(center, detail::kLemmaBoxRadius, rng);
        const JointPoint zhat = detail::sample_box_point(center, detail::kLemmaBoxRadius, rng);
        const Eigen::VectorXd dphi = phi(problem, z) - phi(problem, zhat);
        const Eigen::VectorXd dz = z.stacked() - zhat.stacked();
        const double inner = dphi.dot(dz);
        const double sq = dz.squaredNorm();
        const double scale = 1.0 + sq;
        const double lower_gap = (mu * sq - inner) / scale;   // > 0 breaks the lower bound
        const double upper_gap = (inner - L * sq) / scale;    // > 0 breaks the upper bound
        report.max_violation = std::max({report.max_violation, lower_gap, upper_gap});
    }
    report.pass = report.max_violation <= detail::kLemmaTolerance;
    return report;
}

/// <dPhi, dz> >= (mu / 4L^2) ||dPhi||^2 on random pairs.
inline LemmaReport check_lemma2(const SaddleProblem& problem, long num_pairs,
                                std::uint64_t seed) {
    const double mu = problem.constants().mu();
    const double L = problem.constants().L();
    CounterRng rng = CounterRng::from_seed(seed);
    const JointPoint center = detail::box_center(problem);

    LemmaReport report;
    report.lemma_id = "lemma2";
    report.num_samples = num_pairs;
    for (long i = 0; i < num_pairs; ++i) {
        const JointPoint z = detail::sample_box_point(center, detail::kLemmaBoxRadius, rng);
        const JointPoint zhat = detail::sample_box_point(center, detail::kLemmaBoxRadius, rng);
        const Eigen::VectorXd dphi = phi(problem, z) - phi(problem, zhat);
        const Eigen::VectorXd dz = z.stacked() - zhat.stacked();
        const double inner = dphi.dot(dz);
        const double rhs = mu / (4.0 * L * L) * dphi.squaredNorm();
        const double gap = (rhs - inner) / (1.0 + std::abs(rhs));
        report.max_violation = std::max(report.max_violation, gap);
    }
    report.pass = report.max_violation <= detail::kLemmaTolerance;
    return report;
}

/// Matrix inequality at the saddle: for v = [z - z*; Phi(z)],
/// v' [[mu, -1], [-1, mu/(4L^2)]] (x) I v <= 0.
inline LemmaReport check_corollary1(const SaddleProblem& problem, long num_points,
                                    std::uint64_t seed) {
    if (!problem.has_known_saddle()) {
        throw CapabilityError("check_corollary1 requires a known saddle point");
    }
    const double mu = problem.constants().mu();
    const double L = problem.constants().L();
    const JointPoint zstar = problem.saddle();
    CounterRng rng = CounterRng::from_seed(seed);

    LemmaReport report;
    report.lemma_id = "corollary1";
    report.num_samples = num_points;
    for (long i = 0; i < num_points; ++i) {
        const JointPoint z = detail::sample_box_point(zstar, detail::kLemmaBoxRadius, rng);
        const Eigen::VectorXd dz = z.stacked() - zstar.stacked();
        const Eigen::VectorXd g = phi(problem, z);
        const double form = mu * dz.squaredNorm() - 2.0 * g.dot(dz) +
                            mu / (4.0 * L * L) * g.squaredNorm();
        const double gap = form / (1.0 + dz.squaredNorm() + g.squaredNorm());
        report.max_violation = std::max(report.max_violation, gap);
    }
    report.pass = report.max_violation <= detail::kLemmaTolerance;
    return report;
}

/// Checks the declared per-block constants against sampled finite differences
/// of the exact gradients (the constants are metadata; this makes a
/// mis-declared problem detectable).
inline LemmaReport check_constants_certification(const SaddleProblem& problem,
                                                 long num_pairs, std::uint64_t seed) {
    const RegularityConstants& rc = problem.constants();
    CounterRng rng = CounterRng::from_seed(seed);
    const JointPoint center = detail::box_center(problem);

    LemmaReport report;
    report.lemma_id = "assumption2_certification";
    report.num_samples = num_pairs;
    for (long i = 0; i < num_pairs; ++i) {
        const JointPoint z = detail::sample_box_point(center, detail::kLemmaBoxRadius, rng);
        const JointPoint zhat = detail::sample_box_point(center, detail::kLemmaBoxRadius, rng);

        // x-block: smoothness/strong convexity at fixed y, cross-Lipschitz in y
        {
            const Eigen::VectorXd dgx = problem.grad_x(z.x, z.y) - problem.grad_x(zhat.x, z.y);
            const Eigen::VectorXd dx = z.x - zhat.x;
            const double sq = dx.squaredNorm();
            const double scale = 1.0 + sq;
            report.max_violation = std::max(report.max_violation,
                                            (dgx.norm() - rc.L_x * dx.norm()) / scale);
            report.max_violation = std::max(report.max_violation,
                                            (rc.mu_x * sq - dgx.dot(dx)) / scale);

            const Eigen::VectorXd dgxy = problem.grad_x(z.x, z.y) - problem.grad_x(z.x, zhat.y);
            const Eigen::VectorXd dy = z.y - zhat.y;
            report.max_violation = std::max(
                report.max_violation, (dgxy.norm() - rc.L_xy * dy.norm()) / (1.0 + dy.squaredNorm()));
        }
        // y-block: concavity side, cross-Lipschitz in x
        {
            const Eigen::VectorXd dgy = problem.grad_y(z.x, z.y) - problem.grad_y(z.x, zhat.y);
            const Eigen::VectorXd dy = z.y - zhat.y;
            const double sq = dy.squaredNorm();
            const double scale = 1.0 + sq;
            report.max_violation = std::max(report.max_violation,
                                            (dgy.norm() - rc.L_y * dy.norm()) / scale);
            report.max_violation = std::max(report.max_violation,
                                            (rc.mu_y * sq - (-dgy.dot(dy))) / scale);

            const Eigen::VectorXd dgyx = problem.grad_y(z.x, z.y) - problem.grad_y(zhat.x, z.y);
            const Eigen::VectorXd dx = z.x - zhat.x;
            report.max_violation = std::max(
                report.max_violation, (dgyx.norm() - rc.L_yx * dx.norm()) / (1.0 + dx.squaredNorm()));
        }
    }
    report.pass = report.max_violation <= detail::kLemmaTolerance;
    return report;
}

inline std::vector<LemmaReport> check_all_lemmas(const SaddleProblem& problem,
                                                 long num_samples, std::uint64_t seed) {
    std::vector<LemmaReport> reports;
    reports.push_back(check_lemma1(problem, num_samples, seed));
    reports.push_back(check_lemma2(problem, num_samples, seed + 1));
    if (problem.has_known_saddle()) {
        reports.push_back(check_corollary1(problem, num_samples, seed + 2));
    }
    reports.push_back(check_constants_certification(problem, num_samples, seed + 3));
    return reports;
}

/// Exact per-step contraction of ||z||^2 for deterministic GDA on the
/// scalar bilinear instance: (1 - alpha mu)^2 + alpha^2 L^2.
inline double gda_quadratic_exact_factor(double mu, double L, double alpha) {
    if (!(alpha >= 0.0)) throw InputError("alpha must be nonnegative");
    return (1.0 - alpha * mu) * (1.0 - alpha * mu) + alpha * alpha * L * L;
}

/// Fixed point of the squared-error recursion E' = factor E + 2 alpha^2 sigma^2
/// for stochastic GDA with per-coordinate Gaussian noise on the scalar
/// bilinear instance: 2 alpha^2 sigma^2 / (1 - factor).
inline double gda_quadratic_stationary_mse(double mu, double L, double alpha, double sigma) {
    const double factor = gda_quadratic_exact_factor(mu, L, alpha);
    if (factor >= 1.0) {
        throw DivergenceError("no stationary error: contraction factor >= 1", 0);
    }
    return 2.0 * alpha * alpha * sigma * sigma / (1.0 - factor);
}

/// Bias/variance split of the expected squared error at one checkpoint.
/// The bias is the squared error of the noiseless run from the same start
/// and schedule; the variance component is the remainder of the mean MSE.
struct BiasVarianceEstimate {
    long global_iter = 0;
    double bias_sq = 0.0;
    double total_mse = 0.0;
    double variance_component = 0.0;
    long num_replications = 0;
    double standard_error = 0.0;
};

namespace detail {

/// Squared error to the saddle at each requested checkpoint along one run
/// (checkpoint 0 is the initial point). For ogda, error is measured at w.
inline std::vector<double> checkpoint_errors(const JointPoint& z0, NoisyOracle& oracle,
                                             const StageSchedule& schedule, Method method,
                                             const std::vector<long>& checkpoints) {
    const JointPoint zstar = oracle.problem().saddle();
    std::vector<double> out(checkpoints.size());
    auto record = [&](long iter, const JointPoint& pt) {
        for (std::size_t i = 0; i < checkpoints.size(); ++i) {
            if (checkpoints[i] == iter) out[i] = squared_distance(pt, zstar);
        }
    };
    const DivergenceGuard guard(z0);
    record(0, z0);
    if (method == Method::gda) {
        GdaState state{z0, 0};
        for (std::size_t k = 0; k < schedule.stages.size(); ++k) {
            for (long i = 0; i < schedule.stages[k].n; ++i) {
                state = gda_step(state, oracle, schedule.stages[k].alpha);
                guard.check(state.z, state.global_iter);
                record(state.global_iter, state.z);
            }
        }
    } else {
        OgdaState state{z0, z0, 0};
        for (std::size_t k = 0; k < schedule.stages.size(); ++k) {
            for (long i = 0; i < schedule.stages[k].n; ++i) {
                state = ogda_step(state, oracle, schedule.stages[k].alpha);
                guard.check(state.w, state.global_iter);
                record(state.global_iter, state.w);
            }
        }
    }
    return out;
}

}  // namespace detail

/// Runs one noiseless trajectory plus num_replications noisy trajectories
/// with forked streams; reports the bias/variance split at each checkpoint.
/// Deterministic in (base_seed, num_replications, checkpoints).
inline std::vector<BiasVarianceEstimate> estimate_bias_variance(
    std::shared_ptr<const SaddleProblem> problem, Method method,
    const StageSchedule& schedule, const JointPoint& z0, NoiseKind noise_kind,
    double sigma, long num_replications, const std::vector<long>& checkpoints,
    std::uint64_t base_seed) {
    if (!problem->has_known_saddle()) {
        throw CapabilityError("estimate_bias_variance requires a known saddle point");
    }
    if (num_replications < 2) {
        throw InputError("estimate_bias_variance requires num_replications >= 2");
    }
    for (long c : checkpoints) {
        if (c < 0 || c > schedule.total_length()) {
            throw InputError("checkpoint outside schedule range");
        }
    }

    NoisyOracle noiseless(problem, NoiseModel{noise_kind, 0.0}, base_seed);
    const std::vector<double> bias =
        detail::checkpoint_errors(z0, noiseless, schedule, method, checkpoints);

    NoisyOracle base(problem, NoiseModel{noise_kind, sigma}, base_seed);
    std::vector<double> sum(checkpoints.size(), 0.0);
    std::vector<double> sum_sq(checkpoints.size(), 0.0);
    std::vector<std::string> failures;
    for (long r = 0; r < num_replications; ++r) {
        NoisyOracle oracle = base.fork_stream(static_cast<std::uint64_t>(r));
        try {
            const std::vector<double> errs =
                detail::checkpoint_errors(z0, oracle, schedule, method, checkpoints);
            for (std::size_t i = 0; i < errs.size(); ++i) {
                sum[i] += errs[i];
                sum_sq[i] += errs[i] * errs[i];
            }
        } catch (const DivergenceError& e) {
            failures.push_back("replication " + std::to_string(r) + ": " + e.what());
        }
    }
    if (!failures.empty()) {
        std::string msg = "diverged replications:";
        for (const auto& f : failures) msg += "\n  " + f;
        throw DivergenceError(msg, -1);
    }

    std::vector<BiasVarianceEstimate> out(checkpoints.size());
    const double R = static_cast<double>(num_replications);
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        BiasVarianceEstimate& e = out[i];
        e.global_iter = checkpoints[i];
        e.bias_sq = bias[i];
        e.total_mse = sum[i] / R;
        e.variance_component = e.total_mse - e.bias_sq;
        e.num_replications = num_replications;
        const double sample_var = std::max(0.0, (sum_sq[i] - sum[i] * sum[i] / R) / (R - 1.0));
        e.standard_error = std::sqrt(sample_var / R);
    }
    return out;
}

/// Least-squares slope of log(sq_dist) versus global iteration over
/// [start, end] (inclusive, by global_iter value).
inline double fit_linear_rate(const Trace& trace, long start, long end) {
    if (start > end) throw InputError("fit_linear_rate: empty window");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long count = 0;
    for (const TraceRow& row : trace) {
        if (row.global_iter < start || row.global_iter > end) continue;
        if (!row.sq_dist_to_saddle.has_value() || !(*row.sq_dist_to_saddle > 0.0)) {
            throw InputError("fit_linear_rate: window contains nonpositive or missing distances");
        }
        const double x = static_cast<double>(row.global_iter);
        const double y = std::log(*row.sq_dist_to_saddle);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2) throw InputError("fit_linear_rate: need at least two points in window");
    const double denom = count * sxx - sx * sx;
    if (denom == 0.0) throw InputError("fit_linear_rate: degenerate window");
    return (count * sxy - sx * sy) / denom;
}

}  // namespace minimax
