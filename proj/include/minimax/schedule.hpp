#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "minimax/errors.hpp"

namespace minimax {

enum class Method { gda, ogda };

inline std::string to_string(Method method) {
    return method == Method::gda ? "gda" : "ogda";
}

enum class ScheduleProvenance { mgda_eq14, mogda_eq23, budgeted, custom };

inline std::string to_string(ScheduleProvenance p) {
    switch (p) {
        case ScheduleProvenance::mgda_eq14: return "mgda_eq14";
        case ScheduleProvenance::mogda_eq23: return "mogda_eq23";
        case ScheduleProvenance::budgeted: return "budgeted";
        case ScheduleProvenance::custom: return "custom";
    }
    throw InputError("unknown schedule provenance");
}

namespace detail {

/// Ceiling with a guard: values within 1e-9 of an integer are snapped to it
/// first, so stage lengths computed from exact formulas never drift by one.
inline long guarded_ceil(double v) {
    const double r = std::round(v);
    if (std::abs(v - r) <= 1e-9) return static_cast<long>(r);
    return static_cast<long>(std::ceil(v));
}

}  // namespace detail

struct Stage {
    double alpha;
    long n;
};

/// Multistage stepsize schedule: stage k runs n_k iterations at constant
/// stepsize alpha_k. T(k) is the cumulative stage length.
struct StageSchedule {
    std::vector<Stage> stages;
    ScheduleProvenance provenance = ScheduleProvenance::custom;
    double p = 0.0;
    long n1 = 0;
    double mu = 0.0;
    double L = 0.0;

    std::size_t num_stages() const { return stages.size(); }

    long cumulative_length(std::size_t k) const {  // T(k), 1-based; T(0) = 0
        long total = 0;
        for (std::size_t i = 0; i < k && i < stages.size(); ++i) total += stages[i].n;
        return total;
    }

    long total_length() const { return cumulative_length(stages.size()); }

    void validate() const {
        if (stages.empty()) throw InputError("schedule must have at least one stage");
        for (const Stage& s : stages) {
            if (!(s.alpha > 0.0)) throw InputError("stage stepsize must be positive");
            if (s.n < 1) throw InputError("stage length must be at least 1");
        }
    }
};

/// M-GDA schedule: alpha_1 = mu/(4L^2); for k >= 2,
/// alpha_k = mu/(L^2 2^{k+2}), n_k = ceil(p 2^{k+2} kappa^2 log 2).
inline StageSchedule mgda_schedule(double mu, double L, double p, long n1, int num_stages) {
    if (!(mu > 0.0) || !(mu <= L)) throw InputError("mgda_schedule requires 0 < mu <= L");
    if (!(p >= 2.0)) throw InputError("mgda_schedule requires p >= 2");
    if (n1 < 1 || num_stages < 1) throw InputError("mgda_schedule requires n1, num_stages >= 1");

    const double kappa = L / mu;
    StageSchedule s;
    s.provenance = ScheduleProvenance::mgda_eq14;
    s.p = p;
    s.n1 = n1;
    s.mu = mu;
    s.L = L;
    s.stages.push_back({mu / (4.0 * L * L), n1});
    for (int k = 2; k <= num_stages; ++k) {
        const double pow2 = std::ldexp(1.0, k + 2);  // 2^{k+2}
        const double alpha = mu / (L * L * pow2);
        const long n = detail::guarded_ceil(p * pow2 * kappa * kappa * std::log(2.0));
        s.stages.push_back({alpha, n});
    }
    return s;
}

/// M-OGDA schedule: alpha_1 = 1/(8L); for k >= 2,
/// alpha_k = 1/(L 2^{k+3}), n_k = ceil(p 2^{k+3} kappa log 2).
inline StageSchedule mogda_schedule(double mu, double L, double p, long n1, int num_stages) {
    if (!(mu > 0.0) || !(mu <= L)) throw InputError("mogda_schedule requires 0 < mu <= L");
    if (!(p >= 2.0)) throw InputError("mogda_schedule requires p >= 2");
    if (n1 < 1 || num_stages < 1) throw InputError("mogda_schedule requires n1, num_stages >= 1");

    const double kappa = L / mu;
    StageSchedule s;
    s.provenance = ScheduleProvenance::mogda_eq23;
    s.p = p;
    s.n1 = n1;
    s.mu = mu;
    s.L = L;
    s.stages.push_back({1.0 / (8.0 * L), n1});
    for (int k = 2; k <= num_stages; ++k) {
        const double pow2 = std::ldexp(1.0, k + 3);  // 2^{k+3}
        const double alpha = 1.0 / (L * pow2);
        const long n = detail::guarded_ceil(p * pow2 * kappa * std::log(2.0));
        s.stages.push_back({alpha, n});
    }
    return s;
}

struct PresetBudget {
    long n;
    double C;
};
struct PresetHorizonFree {
    double p;
};

/// First-stage length presets. Budget mode: n1 = ceil(n / C) with p fixed
/// to 2 and the budget required to be at least 2 kappa^2 (gda) or 2 kappa
/// (ogda). Horizon-free mode: n1 = ceil(4 p kappa^2 log(p kappa^2)) for gda,
/// ceil(8 p kappa log(p kappa^2)) for ogda.
inline long preset_n1(Method method, const PresetBudget& preset, double mu, double L) {
    if (!(preset.C >= 2.0)) throw InputError("budget preset requires C >= 2");
    const double kappa = L / mu;
    const double threshold = method == Method::gda ? 2.0 * kappa * kappa : 2.0 * kappa;
    if (static_cast<double>(preset.n) < threshold) {
        throw InputError("budget preset requires n >= " + std::to_string(threshold));
    }
    return detail::guarded_ceil(static_cast<double>(preset.n) / preset.C);
}

inline long preset_n1(Method method, const PresetHorizonFree& preset, double mu, double L) {
    if (!(preset.p >= 2.0)) throw InputError("horizon-free preset requires p >= 2");
    const double kappa = L / mu;
    const double logterm = std::log(preset.p * kappa * kappa);
    if (method == Method::gda) {
        return detail::guarded_ceil(4.0 * preset.p * kappa * kappa * logterm);
    }
    return detail::guarded_ceil(8.0 * preset.p * kappa * logterm);
}

/// Maps a global iteration 1..T(K) to (stage k, inner iteration m), both
/// 1-based: T(k-1) < global_n <= T(k), m = global_n - T(k-1).
inline std::pair<int, long> locate(const StageSchedule& schedule, long global_n) {
    if (global_n < 1 || global_n > schedule.total_length()) {
        throw InputError("locate: global iteration out of range");
    }
    long before = 0;
    for (std::size_t k = 0; k < schedule.stages.size(); ++k) {
        if (global_n <= before + schedule.stages[k].n) {
            return {static_cast<int>(k) + 1, global_n - before};
        }
        before += schedule.stages[k].n;
    }
    throw InputError("locate: unreachable");
}

/// Drops trailing stages and clips the last retained stage so the total
/// length is exactly n. Retained stepsizes are unchanged.
inline StageSchedule truncate_to_budget(const StageSchedule& schedule, long n) {
    if (n < 1) throw InputError("truncate_to_budget requires n >= 1");
    StageSchedule out = schedule;
    out.stages.clear();
    long remaining = n;
    for (const Stage& s : schedule.stages) {
        if (remaining <= 0) break;
        out.stages.push_back({s.alpha, std::min(s.n, remaining)});
        remaining -= s.n;
    }
    if (remaining > 0) {
        throw InputError("truncate_to_budget: budget exceeds schedule length");
    }
    return out;
}

/// Generates standard mgda/mogda stages until the cumulative length covers
/// the budget, then truncates so T(K) = n exactly.
inline StageSchedule budgeted_schedule(Method method, double mu, double L, double p,
                                       long n1, long budget) {
    if (budget < n1) throw InputError("budget must be at least n1");
    int num_stages = 1;
    StageSchedule s;
    for (;;) {
        s = method == Method::gda ? mgda_schedule(mu, L, p, n1, num_stages)
                                  : mogda_schedule(mu, L, p, n1, num_stages);
        if (s.total_length() >= budget) break;
        ++num_stages;
    }
    StageSchedule out = truncate_to_budget(s, budget);
    out.provenance = ScheduleProvenance::budgeted;
    return out;
}

/// Stepsize validity per the convergence guarantees: alpha <= mu/(4L^2)
/// for GDA, alpha <= 1/(8L) for OGDA. Returns the violated bound, if any.
inline std::optional<double> stepsize_bound_violation(const StageSchedule& schedule,
                                                      Method method, double mu, double L) {
    const double bound = method == Method::gda ? mu / (4.0 * L * L) : 1.0 / (8.0 * L);
    for (const Stage& s : schedule.stages) {
        if (s.alpha > bound * (1.0 + 1e-12)) return bound;
    }
    return std::nullopt;
}

}  // namespace minimax
