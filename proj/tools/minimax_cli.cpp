// Command-line front-end for the minimax solver library.
//
// Subcommands:
//   run        execute one configured experiment, writing trace.csv + summary.json
//   replicate  run with num_replications > 1 and bias/variance output
//   schedule   print a multistage schedule table (optionally save as JSON)
//   verify     run the structural-inequality checks for a problem
//   sweep      run a config template across kappa / sigma / method values
//
// Exit codes: 0 ok, 2 config error, 3 divergence, 4 capability error,
// 5 verification failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "minimax/minimax.hpp"

namespace {

using namespace minimax;

ExperimentConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open config file: " + path);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed config: ") + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid config: ") + e.what());
    }
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed_override,
            std::optional<long> replications_override, bool allow_unsafe) {
    ExperimentConfig config = load_config(config_path);
    if (seed_override) config.base_seed = *seed_override;
    if (replications_override) config.num_replications = *replications_override;
    if (allow_unsafe) config.allow_unsafe_stepsize = true;

    ExperimentResult result = run_experiment(config);
    const std::filesystem::path dir(out_dir);
    write_file(dir / "trace.csv", trace_to_csv(result.trace));
    write_file(dir / "summary.json", result.summary.dump(2) + "\n");
    std::cout << "wrote " << (dir / "trace.csv").string() << " and "
              << (dir / "summary.json").string() << "\n";
    if (result.summary.contains("final_sq_dist")) {
        std::cout << "final sq_dist = " << result.summary["final_sq_dist"].dump() << "\n";
    }
    return kExitOk;
}

int cmd_schedule(const std::string& method, double mu, double L, double p, long n1,
                 int num_stages, const std::string& preset, long budget, double C,
                 const std::string& out_path) {
    const Method m = method == "mogda" || method == "ogda" ? Method::ogda : Method::gda;
    long first = n1;
    if (preset == "budget") {
        first = preset_n1(m, PresetBudget{budget, C}, mu, L);
    } else if (preset == "horizon_free") {
        first = preset_n1(m, PresetHorizonFree{p}, mu, L);
    } else if (!preset.empty()) {
        throw InputError("unknown preset: " + preset);
    }
    StageSchedule schedule = m == Method::gda ? mgda_schedule(mu, L, p, first, num_stages)
                                              : mogda_schedule(mu, L, p, first, num_stages);
    std::cout << schedule_table(schedule);
    if (!out_path.empty()) {
        write_file(out_path, to_json(schedule).dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_verify(const std::string& config_path, std::optional<std::uint64_t> seed_override,
               long num_samples) {
    std::ifstream f(config_path);
    if (!f) throw InputError("cannot open config file: " + config_path);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed config: ") + e.what());
    }
    // Accept either a full experiment config or a bare problem spec.
    ProblemSpec spec;
    std::uint64_t seed = seed_override.value_or(0);
    try {
        if (j.contains("problem")) {
            spec = problem_from_json(j.at("problem"));
            if (!seed_override && j.contains("base_seed")) {
                seed = j.at("base_seed").get<std::uint64_t>();
            }
        } else {
            spec = problem_from_json(j);
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid problem spec: ") + e.what());
    }

    auto [reports, all_pass] = run_verification(spec, num_samples, seed);
    for (const LemmaReport& r : reports) {
        std::printf("%-28s samples=%-6ld max_violation=%-12.3e %s\n", r.lemma_id.c_str(),
                    r.num_samples, r.max_violation, r.pass ? "PASS" : "FAIL");
    }
    return all_pass ? kExitOk : kExitVerificationFailure;
}

int cmd_sweep(const std::string& config_path, const std::string& axis,
              const std::vector<std::string>& raw_values, const std::string& out_dir,
              std::optional<std::uint64_t> seed_override, bool allow_unsafe) {
    ExperimentConfig config = load_config(config_path);
    if (seed_override) config.base_seed = *seed_override;
    if (allow_unsafe) config.allow_unsafe_stepsize = true;
    if (axis == "kappa" && config.problem.type != "scalar_bilinear" &&
        config.problem.type != "random_quadratic") {
        throw InputError("kappa sweep requires a (mu, L)-parameterized problem");
    }

    std::vector<json> values;
    for (const std::string& v : raw_values) {
        if (axis == "method") {
            values.push_back(v);
        } else {
            try {
                values.push_back(std::stod(v));
            } catch (const std::exception&) {
                throw InputError("sweep value is not a number: " + v);
            }
        }
    }

    SweepResult result = run_sweep(config, axis, values);
    const std::filesystem::path path = std::filesystem::path(out_dir) / "sweep.json";
    write_file(path, result.summary.dump(2) + "\n");
    std::cout << "wrote " << path.string() << "\n";
    for (const json& entry : result.summary["runs"]) {
        std::cout << axis << "=" << entry["value"].dump() << "  status=" << entry["status"].dump();
        if (entry.contains("iterations_to_threshold")) {
            std::cout << "  iters=" << entry["iterations_to_threshold"].dump();
        }
        std::cout << "\n";
    }
    return result.any_failed ? kExitDivergence : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic GDA / OGDA minimax solver and verification harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<long> replications;
    bool allow_unsafe = false;

    auto add_common = [&](CLI::App* cmd, bool needs_config = true) {
        if (needs_config) {
            cmd->add_option("--config", config_path, "path to JSON config")->required();
        }
        cmd->add_option("--seed", seed, "override base_seed");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_flag("--allow-unsafe-stepsize", allow_unsafe,
                      "downgrade the stepsize-bound error to a warning");
    };

    CLI::App* run = app.add_subcommand("run", "execute one experiment");
    add_common(run);
    run->add_option("--replications", replications, "override num_replications");

    CLI::App* replicate =
        app.add_subcommand("replicate", "run with replications and bias/variance output");
    add_common(replicate);
    long replicate_count = 100;
    replicate->add_option("--replications", replicate_count, "number of replications");

    CLI::App* sched = app.add_subcommand("schedule", "print a multistage schedule");
    std::string sched_method = "mgda";
    double mu = 1.0, L = 1.0, p = 2.0, C = 2.0;
    long n1 = 1, budget = 0;
    int num_stages = 1;
    std::string preset;
    std::string sched_out;
    sched->add_option("--method", sched_method, "mgda | mogda")->required();
    sched->add_option("--mu", mu, "strong convexity constant")->required();
    sched->add_option("--L", L, "smoothness constant")->required();
    sched->add_option("--p", p, "decay exponent (>= 2)");
    sched->add_option("--n1", n1, "first-stage length");
    sched->add_option("--num-stages", num_stages, "number of stages")->required();
    sched->add_option("--preset", preset, "n1 preset: budget | horizon_free");
    sched->add_option("--budget", budget, "total iteration budget (budget preset)");
    sched->add_option("--C", C, "budget divisor (>= 2)");
    sched->add_option("--out", sched_out, "also write the schedule as JSON");

    CLI::App* verify = app.add_subcommand("verify", "check the structural inequalities");
    add_common(verify);
    long num_samples = 1000;
    verify->add_option("--samples", num_samples, "sample pairs per check");

    CLI::App* sweep = app.add_subcommand("sweep", "run a config across an axis");
    add_common(sweep);
    std::string axis;
    std::vector<std::string> values;
    sweep->add_option("--axis", axis, "kappa | sigma | method")->required();
    sweep->add_option("--values", values, "axis values")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(config_path, out_dir, seed, replications, allow_unsafe);
        }
        if (replicate->parsed()) {
            return cmd_run(config_path, out_dir, seed, replicate_count, allow_unsafe);
        }
        if (sched->parsed()) {
            return cmd_schedule(sched_method, mu, L, p, n1, num_stages, preset, budget, C,
                                sched_out);
        }
        if (verify->parsed()) {
            return cmd_verify(config_path, seed, num_samples);
        }
        if (sweep->parsed()) {
            return cmd_sweep(config_path, axis, values, out_dir, seed, allow_unsafe);
        }
    } catch (const minimax::DivergenceError& e) {
        std::fprintf(stderr, "divergence: %s\n", e.what());
        return minimax::kExitDivergence;
    } catch (const minimax::CapabilityError& e) {
        std::fprintf(stderr, "capability error: %s\n", e.what());
        return minimax::kExitCapabilityError;
    } catch (const minimax::InputError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return minimax::kExitConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return minimax::kExitConfigError;
    }
    return minimax::kExitConfigError;
}
