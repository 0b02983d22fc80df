#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "minimax/analysis.hpp"
#include "minimax/config.hpp"
#include "minimax/solvers.hpp"
#include "minimax/version.hpp"

namespace minimax {

// Exit codes shared by the CLI and the library-level runners.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDivergence = 3;
inline constexpr int kExitCapabilityError = 4;
inline constexpr int kExitVerificationFailure = 5;

namespace detail {

/// 17 significant digits: round-trip exact for 64-bit doubles.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

inline std::string trace_to_csv(const Trace& trace) {
    std::string out = "global_iter,stage,inner_iter,alpha,sq_dist,phi_norm\n";
    for (const TraceRow& row : trace) {
        out += std::to_string(row.global_iter);
        out += ',';
        out += std::to_string(row.stage);
        out += ',';
        out += std::to_string(row.inner_iter);
        out += ',';
        out += detail::format_double(row.alpha);
        out += ',';
        if (row.sq_dist_to_saddle.has_value()) {
            out += detail::format_double(*row.sq_dist_to_saddle);
        }
        out += ',';
        out += detail::format_double(row.phi_norm);
        out += '\n';
    }
    return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open output file: " + path.string());
    f << content;
}

inline json to_json(const StageSchedule& schedule) {
    json stages = json::array();
    long cum = 0;
    for (std::size_t k = 0; k < schedule.stages.size(); ++k) {
        cum += schedule.stages[k].n;
        stages.push_back({{"k", k + 1},
                          {"alpha", schedule.stages[k].alpha},
                          {"n", schedule.stages[k].n},
                          {"T", cum}});
    }
    return json{{"provenance", to_string(schedule.provenance)}, {"stages", stages}};
}

inline std::string schedule_table(const StageSchedule& schedule) {
    std::ostringstream out;
    out << "  k        alpha_k        n_k       T(k)\n";
    long cum = 0;
    for (std::size_t k = 0; k < schedule.stages.size(); ++k) {
        cum += schedule.stages[k].n;
        char line[96];
        std::snprintf(line, sizeof(line), "%3zu  %13.10g  %9ld  %9ld\n", k + 1,
                      schedule.stages[k].alpha, schedule.stages[k].n, cum);
        out << line;
    }
    return out.str();
}

inline json to_json(const LemmaReport& report) {
    return json{{"lemma", report.lemma_id},
                {"num_samples", report.num_samples},
                {"max_violation", report.max_violation},
                {"pass", report.pass}};
}

inline json to_json(const BiasVarianceEstimate& e) {
    return json{{"global_iter", e.global_iter},
                {"bias_sq", e.bias_sq},
                {"total_mse", e.total_mse},
                {"variance_component", e.variance_component},
                {"num_replications", e.num_replications},
                {"standard_error", e.standard_error}};
}

/// Default checkpoints: stage boundaries plus powers of two up to T(K),
/// always including 0 and T(K).
inline std::vector<long> default_checkpoints(const StageSchedule& schedule) {
    std::set<long> points{0, schedule.total_length()};
    long cum = 0;
    for (const Stage& s : schedule.stages) {
        cum += s.n;
        points.insert(cum);
    }
    for (long p = 1; p <= schedule.total_length(); p *= 2) points.insert(p);
    return {points.begin(), points.end()};
}

struct ExperimentResult {
    StageSchedule schedule;
    Trace trace;  // single run, or replication 0 when replicated
    JointPoint final_point;
    std::vector<BiasVarianceEstimate> bias_variance;  // only when num_replications > 1
    json summary;
};

inline JointPoint default_z0(const SaddleProblem& problem) {
    return JointPoint(Eigen::VectorXd::Ones(problem.m()), Eigen::VectorXd::Ones(problem.n()));
}

/// Executes one configured experiment. With num_replications > 1 this also
/// produces the bias/variance decomposition at the configured checkpoints.
inline ExperimentResult run_experiment(const ExperimentConfig& config) {
    auto problem = config.problem.build();
    const Method method = config.stepping_method();
    const double mu = problem->constants().mu();
    const double L = problem->constants().L();

    ExperimentResult result;
    result.schedule = config.schedule.expand(method, mu, L);

    if (auto bound = stepsize_bound_violation(result.schedule, method, mu, L)) {
        const std::string msg =
            "stepsize exceeds the guaranteed-safe bound " + detail::format_double(*bound) +
            (method == Method::gda ? " = mu/(4L^2) for gda" : " = 1/(8L) for ogda");
        if (!config.allow_unsafe_stepsize) {
            throw InputError(msg + " (set allow_unsafe_stepsize to override)");
        }
        std::fprintf(stderr, "warning: %s\n", msg.c_str());
    }

    const JointPoint z0 = config.z0.value_or(default_z0(*problem));
    NoisyOracle oracle(problem, NoiseModel{config.noise_kind, config.sigma}, config.base_seed);

    json summary;
    summary["library_version"] = kVersion;
    summary["config"] = to_json(config);
    summary["config_hash"] = config_hash(config);
    summary["base_seed"] = config.base_seed;
    summary["schedule"] = to_json(result.schedule);

    if (config.num_replications <= 1) {
        MultistageResult run = run_multistage(z0, oracle, result.schedule, method);
        result.trace = std::move(run.trace);
        result.final_point = std::move(run.final_point);
    } else {
        NoisyOracle rep0 = oracle.fork_stream(0);
        MultistageResult run = run_multistage(z0, rep0, result.schedule, method);
        result.trace = std::move(run.trace);
        result.final_point = std::move(run.final_point);

        std::vector<long> checkpoints =
            config.checkpoints.empty() ? default_checkpoints(result.schedule) : config.checkpoints;
        result.bias_variance = estimate_bias_variance(
            problem, method, result.schedule, z0, config.noise_kind, config.sigma,
            config.num_replications, checkpoints, config.base_seed);
        json bv = json::array();
        for (const auto& e : result.bias_variance) bv.push_back(to_json(e));
        summary["bias_variance"] = bv;
    }

    summary["total_iterations"] = result.schedule.total_length();
    if (!result.trace.empty()) {
        const TraceRow& last = result.trace.back();
        if (last.sq_dist_to_saddle.has_value()) {
            summary["final_sq_dist"] = *last.sq_dist_to_saddle;
        }
        summary["final_phi_norm"] = last.phi_norm;
    }
    result.summary = std::move(summary);
    return result;
}

/// Runs all structural-inequality checks for a problem spec.
/// Returns (reports, all_pass).
inline std::pair<std::vector<LemmaReport>, bool> run_verification(const ProblemSpec& spec,
                                                                  long num_samples,
                                                                  std::uint64_t seed) {
    auto problem = spec.build();
    std::vector<LemmaReport> reports = check_all_lemmas(*problem, num_samples, seed);
    bool all_pass = true;
    for (const auto& r : reports) all_pass = all_pass && r.pass;
    return {std::move(reports), all_pass};
}

/// First global iteration at which sq_dist drops to the threshold, if any.
inline std::optional<long> iterations_to_threshold(const Trace& trace, double threshold) {
    for (const TraceRow& row : trace) {
        if (row.sq_dist_to_saddle.has_value() && *row.sq_dist_to_saddle <= threshold) {
            return row.global_iter;
        }
    }
    return std::nullopt;
}

struct SweepResult {
    json summary;
    bool any_failed = false;
};

/// Runs the template config once per axis value. Per value, the summary
/// records iterations-to-threshold and the fitted log-linear rate.
inline SweepResult run_sweep(const ExperimentConfig& config_template, const std::string& axis,
                             const std::vector<json>& values) {
    if (values.empty()) throw InputError("sweep requires at least one value");

    SweepResult sweep;
    json runs = json::array();
    for (const json& value : values) {
        ExperimentConfig config = config_template;
        if (axis == "kappa") {
            const double kappa = value.get<double>();
            if (!(kappa >= 1.0)) throw InputError("kappa values must be >= 1");
            config.problem.L = config.problem.mu * kappa;
        } else if (axis == "sigma") {
            config.sigma = value.get<double>();
        } else if (axis == "method") {
            config.method = value.get<std::string>();
        } else {
            throw InputError("unknown sweep axis: " + axis);
        }

        json entry;
        entry["value"] = value;
        try {
            ExperimentResult result = run_experiment(config);
            const auto iters = iterations_to_threshold(result.trace, config.threshold);
            if (iters.has_value()) {
                entry["iterations_to_threshold"] = *iters;
            } else {
                entry["iterations_to_threshold"] = nullptr;
            }
            const long fit_end = iters.value_or(result.schedule.total_length());
            if (fit_end >= 1) {
                try {
                    entry["fitted_rate"] = fit_linear_rate(result.trace, 0, fit_end);
                } catch (const InputError&) {
                    entry["fitted_rate"] = nullptr;
                }
            }
            entry["final_phi_norm"] = result.summary.value("final_phi_norm", 0.0);
            entry["status"] = "ok";
        } catch (const std::exception& e) {
            entry["status"] = "failed";
            entry["error"] = e.what();
            sweep.any_failed = true;
        }
        runs.push_back(std::move(entry));
    }
    sweep.summary["library_version"] = kVersion;
    sweep.summary["axis"] = axis;
    sweep.summary["base_seed"] = config_template.base_seed;
    sweep.summary["config_hash"] = config_hash(config_template);
    sweep.summary["runs"] = std::move(runs);
    return sweep;
}

}  // namespace minimax
