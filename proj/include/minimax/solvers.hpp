#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minimax/errors.hpp"
#include "minimax/joint_point.hpp"
#include "minimax/oracle.hpp"
#include "minimax/schedule.hpp"

namespace minimax {

struct GdaState {
    JointPoint z;
    long global_iter = 0;
};

/// Single-call optimistic state (w, z); initialized with w = z.
struct OgdaState {
    JointPoint w;
    JointPoint z;
    long global_iter = 0;
};

struct TraceRow {
    long global_iter;
    int stage;
    long inner_iter;
    double alpha;
    std::optional<double> sq_dist_to_saddle;
    double phi_norm;
};

using Trace = std::vector<TraceRow>;

namespace detail {

struct DivergenceGuard {
    double limit;  // squared-norm ceiling: 1e12 x (1 + initial squared norm)

    explicit DivergenceGuard(const JointPoint& z0)
        : limit(1e12 * (1.0 + z0.x.squaredNorm() + z0.y.squaredNorm())) {}

    void check(const JointPoint& z, long global_iter) const {
        const double sq = z.x.squaredNorm() + z.y.squaredNorm();
        if (!z.is_finite() || sq > limit) {
            throw DivergenceError(
                "iterate diverged at global iteration " + std::to_string(global_iter),
                global_iter);
        }
    }
};

inline TraceRow make_row(const SaddleProblem& problem, const JointPoint& point,
                         long global_iter, int stage, long inner_iter, double alpha) {
    TraceRow row;
    row.global_iter = global_iter;
    row.stage = stage;
    row.inner_iter = inner_iter;
    row.alpha = alpha;
    if (problem.has_known_saddle()) {
        row.sq_dist_to_saddle = squared_distance(point, problem.saddle());
    }
    row.phi_norm = phi(problem, point).norm();
    return row;
}

}  // namespace detail

/// One GDA step z' = z - alpha Phi~(z). Consumes exactly one oracle draw.
inline GdaState gda_step(const GdaState& state, NoisyOracle& oracle, double alpha) {
    if (!(alpha > 0.0)) throw InputError("gda_step requires alpha > 0");
    oracle.problem().require_dims(state.z);
    const Eigen::VectorXd g = oracle.sample_phi(state.z);
    const Eigen::Index m = state.z.m();
    GdaState next;
    next.z = JointPoint(state.z.x - alpha * g.head(m), state.z.y - alpha * g.tail(state.z.n()));
    next.global_iter = state.global_iter + 1;
    if (!next.z.is_finite()) {
        throw DivergenceError("non-finite iterate at global iteration " +
                                  std::to_string(next.global_iter),
                              next.global_iter);
    }
    return next;
}

/// One OGDA step in the single-call (w, z) form:
///   z' = w - alpha Phi~(z), then w' = w - alpha Phi~(z').
/// Exactly two oracle draws, in that order.
inline OgdaState ogda_step(const OgdaState& state, NoisyOracle& oracle, double alpha) {
    if (!(alpha >= 0.0)) throw InputError("ogda_step requires alpha >= 0");
    oracle.problem().require_dims(state.z);
    require_same_dims(state.w, state.z);
    const Eigen::Index m = state.z.m();
    const Eigen::Index n = state.z.n();

    const Eigen::VectorXd g1 = oracle.sample_phi(state.z);
    OgdaState next;
    next.z = JointPoint(state.w.x - alpha * g1.head(m), state.w.y - alpha * g1.tail(n));
    const Eigen::VectorXd g2 = oracle.sample_phi(next.z);
    next.w = JointPoint(state.w.x - alpha * g2.head(m), state.w.y - alpha * g2.tail(n));
    next.global_iter = state.global_iter + 1;
    if (!next.z.is_finite() || !next.w.is_finite()) {
        throw DivergenceError("non-finite iterate at global iteration " +
                                  std::to_string(next.global_iter),
                              next.global_iter);
    }
    return next;
}

/// n_steps GDA steps at constant alpha; appends one trace row per step.
inline GdaState run_stage(GdaState state, NoisyOracle& oracle, double alpha, long n_steps,
                          int stage, Trace& trace, const detail::DivergenceGuard& guard) {
    if (n_steps < 1) throw InputError("run_stage requires n_steps >= 1");
    for (long i = 1; i <= n_steps; ++i) {
        state = gda_step(state, oracle, alpha);
        guard.check(state.z, state.global_iter);
        trace.push_back(detail::make_row(oracle.problem(), state.z, state.global_iter,
                                         stage, i, alpha));
    }
    return state;
}

/// n_steps OGDA steps at constant alpha; trace rows report w (the quantity
/// the convergence bounds are stated for).
inline OgdaState run_stage(OgdaState state, NoisyOracle& oracle, double alpha, long n_steps,
                           int stage, Trace& trace, const detail::DivergenceGuard& guard) {
    if (n_steps < 1) throw InputError("run_stage requires n_steps >= 1");
    for (long i = 1; i <= n_steps; ++i) {
        state = ogda_step(state, oracle, alpha);
        guard.check(state.w, state.global_iter);
        trace.push_back(detail::make_row(oracle.problem(), state.w, state.global_iter,
                                         stage, i, alpha));
    }
    return state;
}

inline GdaState run_stage(GdaState state, NoisyOracle& oracle, double alpha, long n_steps,
                          int stage, Trace& trace) {
    const detail::DivergenceGuard guard(state.z);
    return run_stage(std::move(state), oracle, alpha, n_steps, stage, trace, guard);
}

inline OgdaState run_stage(OgdaState state, NoisyOracle& oracle, double alpha, long n_steps,
                           int stage, Trace& trace) {
    const detail::DivergenceGuard guard(state.w);
    return run_stage(std::move(state), oracle, alpha, n_steps, stage, trace, guard);
}

struct MultistageResult {
    JointPoint final_point;  // z for gda, w for ogda
    Trace trace;
};

/// Runs all stages of the schedule, handing the last iterate of each stage
/// to the next. The trace includes iterate 0 (stage 0, alpha 0) and one row
/// per step; global indices agree with the schedule's concatenation map.
inline MultistageResult run_multistage(const JointPoint& z0, NoisyOracle& oracle,
                                       const StageSchedule& schedule, Method method) {
    schedule.validate();
    oracle.problem().require_dims(z0);

    MultistageResult result;
    result.trace.reserve(static_cast<std::size_t>(schedule.total_length()) + 1);
    result.trace.push_back(detail::make_row(oracle.problem(), z0, 0, 0, 0, 0.0));
    const detail::DivergenceGuard guard(z0);

    if (method == Method::gda) {
        GdaState state{z0, 0};
        for (std::size_t k = 0; k < schedule.stages.size(); ++k) {
            state = run_stage(std::move(state), oracle, schedule.stages[k].alpha,
                              schedule.stages[k].n, static_cast<int>(k) + 1,
                              result.trace, guard);
        }
        result.final_point = std::move(state.z);
    } else {
        OgdaState state{z0, z0, 0};
        for (std::size_t k = 0; k < schedule.stages.size(); ++k) {
            state = run_stage(std::move(state), oracle, schedule.stages[k].alpha,
                              schedule.stages[k].n, static_cast<int>(k) + 1,
                              result.trace, guard);
        }
        result.final_point = std::move(state.w);
    }
    return result;
}

}  // namespace minimax
