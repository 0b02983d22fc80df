#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "minimax/errors.hpp"
#include "minimax/oracle.hpp"
#include "minimax/problems.hpp"
#include "minimax/schedule.hpp"

namespace minimax {

using json = nlohmann::json;

inline constexpr int kConfigSchemaVersion = 1;

/// Problem specification as it appears in a config file.
struct ProblemSpec {
    std::string type;  // scalar_bilinear | random_quadratic | quadratic
    // scalar_bilinear / random_quadratic
    double mu = 1.0;
    double L = 1.0;
    // random_quadratic
    std::uint64_t seed = 0;
    long m = 1;
    long n = 1;
    bool with_linear_terms = false;
    // explicit quadratic
    Eigen::MatrixXd A, B, C;
    Eigen::VectorXd a, b;
    RegularityConstants constants;

    std::shared_ptr<const SaddleProblem> build() const {
        if (type == "scalar_bilinear") {
            return std::make_shared<ScalarBilinearQuadratic>(mu, L);
        }
        if (type == "random_quadratic") {
            return std::make_shared<GeneralQuadraticSaddle>(
                random_quadratic(seed, m, n, mu, L, with_linear_terms));
        }
        if (type == "quadratic") {
            return std::make_shared<GeneralQuadraticSaddle>(A, B, C, a, b, constants);
        }
        throw InputError("unknown problem type: " + type);
    }
};

/// Schedule specification: explicit stages or one of the presets.
struct ScheduleSpec {
    std::string type;  // explicit | eq14 | eq23 | budget | horizon_free
    std::vector<Stage> stages;  // explicit
    double p = 2.0;
    long n1 = 1;
    int num_stages = 1;
    long budget = 0;   // budget / horizon_free total iteration count
    double C = 2.0;    // budget preset divisor

    /// Expands to a concrete schedule using the problem's certified
    /// constants; deterministic.
    StageSchedule expand(Method method, double mu, double L) const {
        if (type == "explicit") {
            StageSchedule s;
            s.stages = stages;
            s.provenance = ScheduleProvenance::custom;
            s.mu = mu;
            s.L = L;
            s.validate();
            return s;
        }
        if (type == "eq14") return mgda_schedule(mu, L, p, n1, num_stages);
        if (type == "eq23") return mogda_schedule(mu, L, p, n1, num_stages);
        if (type == "budget") {
            const long first = preset_n1(method, PresetBudget{budget, C}, mu, L);
            return budgeted_schedule(method, mu, L, 2.0, first, budget);
        }
        if (type == "horizon_free") {
            const long first = preset_n1(method, PresetHorizonFree{p}, mu, L);
            if (budget < first) {
                throw InputError("horizon_free schedule needs budget >= n1 = " +
                                 std::to_string(first));
            }
            return budgeted_schedule(method, mu, L, p, first, budget);
        }
        throw InputError("unknown schedule type: " + type);
    }
};

struct ExperimentConfig {
    int schema_version = kConfigSchemaVersion;
    ProblemSpec problem;
    std::string method = "gda";  // gda | ogda | mgda | mogda
    ScheduleSpec schedule;
    double sigma = 0.0;
    NoiseKind noise_kind = NoiseKind::block_isotropic_gaussian;
    std::optional<JointPoint> z0;  // defaults to all-ones
    long num_replications = 1;
    std::vector<long> checkpoints;  // empty -> stage ends plus powers of two
    std::uint64_t base_seed = 0;
    bool allow_unsafe_stepsize = false;
    double threshold = 1e-6;  // sweep convergence threshold

    Method stepping_method() const {
        if (method == "gda" || method == "mgda") return Method::gda;
        if (method == "ogda" || method == "mogda") return Method::ogda;
        throw InputError("unknown method: " + method);
    }
};

// ---- JSON round-trip ----

namespace detail {

inline json matrix_to_json(const Eigen::MatrixXd& M) {
    json out;
    out["rows"] = M.rows();
    out["cols"] = M.cols();
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(M.size()));
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        for (Eigen::Index j = 0; j < M.cols(); ++j) data.push_back(M(i, j));
    }
    out["data"] = data;  // row-major
    return out;
}

inline Eigen::MatrixXd matrix_from_json(const json& j) {
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    const auto data = j.at("data").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
        throw InputError("matrix data length does not match rows*cols");
    }
    Eigen::MatrixXd M(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j2 = 0; j2 < cols; ++j2) {
            M(i, j2) = data[static_cast<std::size_t>(i * cols + j2)];
        }
    }
    return M;
}

}  // namespace detail

inline json to_json(const RegularityConstants& rc) {
    return json{{"mu_x", rc.mu_x}, {"mu_y", rc.mu_y}, {"L_x", rc.L_x},
                {"L_y", rc.L_y},   {"L_xy", rc.L_xy}, {"L_yx", rc.L_yx}};
}

inline RegularityConstants regularity_from_json(const json& j) {
    RegularityConstants rc;
    rc.mu_x = j.at("mu_x").get<double>();
    rc.mu_y = j.at("mu_y").get<double>();
    rc.L_x = j.at("L_x").get<double>();
    rc.L_y = j.at("L_y").get<double>();
    rc.L_xy = j.at("L_xy").get<double>();
    rc.L_yx = j.at("L_yx").get<double>();
    return rc;
}

inline json to_json(const ProblemSpec& spec) {
    json out;
    out["type"] = spec.type;
    if (spec.type == "scalar_bilinear") {
        out["mu"] = spec.mu;
        out["L"] = spec.L;
    } else if (spec.type == "random_quadratic") {
        out["mu"] = spec.mu;
        out["L"] = spec.L;
        out["seed"] = spec.seed;
        out["m"] = spec.m;
        out["n"] = spec.n;
        out["with_linear_terms"] = spec.with_linear_terms;
    } else if (spec.type == "quadratic") {
        out["A"] = detail::matrix_to_json(spec.A);
        out["B"] = detail::matrix_to_json(spec.B);
        out["C"] = detail::matrix_to_json(spec.C);
        out["a"] = std::vector<double>(spec.a.data(), spec.a.data() + spec.a.size());
        out["b"] = std::vector<double>(spec.b.data(), spec.b.data() + spec.b.size());
        out["constants"] = to_json(spec.constants);
    } else {
        throw InputError("unknown problem type: " + spec.type);
    }
    return out;
}

inline ProblemSpec problem_from_json(const json& j) {
    ProblemSpec spec;
    spec.type = j.at("type").get<std::string>();
    if (spec.type == "scalar_bilinear") {
        spec.mu = j.at("mu").get<double>();
        spec.L = j.at("L").get<double>();
    } else if (spec.type == "random_quadratic") {
        spec.mu = j.at("mu").get<double>();
        spec.L = j.at("L").get<double>();
        spec.seed = j.at("seed").get<std::uint64_t>();
        spec.m = j.at("m").get<long>();
        spec.n = j.at("n").get<long>();
        spec.with_linear_terms = j.value("with_linear_terms", false);
    } else if (spec.type == "quadratic") {
        spec.A = detail::matrix_from_json(j.at("A"));
        spec.B = detail::matrix_from_json(j.at("B"));
        spec.C = detail::matrix_from_json(j.at("C"));
        const auto av = j.at("a").get<std::vector<double>>();
        const auto bv = j.at("b").get<std::vector<double>>();
        spec.a = Eigen::Map<const Eigen::VectorXd>(av.data(), static_cast<Eigen::Index>(av.size()));
        spec.b = Eigen::Map<const Eigen::VectorXd>(bv.data(), static_cast<Eigen::Index>(bv.size()));
        spec.constants = regularity_from_json(j.at("constants"));
    } else {
        throw InputError("unknown problem type: " + spec.type);
    }
    return spec;
}

inline json to_json(const ScheduleSpec& spec) {
    json out;
    out["type"] = spec.type;
    if (spec.type == "explicit") {
        json stages = json::array();
        for (const Stage& s : spec.stages) {
            stages.push_back({{"alpha", s.alpha}, {"n", s.n}});
        }
        out["stages"] = stages;
    } else if (spec.type == "eq14" || spec.type == "eq23") {
        out["p"] = spec.p;
        out["n1"] = spec.n1;
        out["num_stages"] = spec.num_stages;
    } else if (spec.type == "budget") {
        out["budget"] = spec.budget;
        out["C"] = spec.C;
    } else if (spec.type == "horizon_free") {
        out["p"] = spec.p;
        out["budget"] = spec.budget;
    } else {
        throw InputError("unknown schedule type: " + spec.type);
    }
    return out;
}

inline ScheduleSpec schedule_from_json(const json& j) {
    ScheduleSpec spec;
    spec.type = j.at("type").get<std::string>();
    if (spec.type == "explicit") {
        for (const json& s : j.at("stages")) {
            spec.stages.push_back({s.at("alpha").get<double>(), s.at("n").get<long>()});
        }
    } else if (spec.type == "eq14" || spec.type == "eq23") {
        spec.p = j.at("p").get<double>();
        spec.n1 = j.at("n1").get<long>();
        spec.num_stages = j.at("num_stages").get<int>();
    } else if (spec.type == "budget") {
        spec.budget = j.at("budget").get<long>();
        spec.C = j.at("C").get<double>();
    } else if (spec.type == "horizon_free") {
        spec.p = j.at("p").get<double>();
        spec.budget = j.at("budget").get<long>();
    } else {
        throw InputError("unknown schedule type: " + spec.type);
    }
    return spec;
}

inline json to_json(const ExperimentConfig& config) {
    json out;
    out["schema_version"] = config.schema_version;
    out["problem"] = to_json(config.problem);
    out["method"] = config.method;
    out["schedule"] = to_json(config.schedule);
    out["sigma"] = config.sigma;
    out["noise_kind"] = to_string(config.noise_kind);
    if (config.z0.has_value()) {
        out["z0"] = {
            {"x", std::vector<double>(config.z0->x.data(), config.z0->x.data() + config.z0->m())},
            {"y", std::vector<double>(config.z0->y.data(), config.z0->y.data() + config.z0->n())}};
    }
    out["num_replications"] = config.num_replications;
    if (!config.checkpoints.empty()) out["checkpoints"] = config.checkpoints;
    out["base_seed"] = config.base_seed;
    out["allow_unsafe_stepsize"] = config.allow_unsafe_stepsize;
    out["threshold"] = config.threshold;
    return out;
}

inline ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig config;
    config.schema_version = j.at("schema_version").get<int>();
    if (config.schema_version != kConfigSchemaVersion) {
        throw InputError("unsupported config schema version " +
                         std::to_string(config.schema_version));
    }
    config.problem = problem_from_json(j.at("problem"));
    config.method = j.at("method").get<std::string>();
    config.schedule = schedule_from_json(j.at("schedule"));
    config.sigma = j.value("sigma", 0.0);
    config.noise_kind =
        noise_kind_from_string(j.value("noise_kind", std::string("block_isotropic_gaussian")));
    if (j.contains("z0")) {
        const auto xv = j.at("z0").at("x").get<std::vector<double>>();
        const auto yv = j.at("z0").at("y").get<std::vector<double>>();
        config.z0 = JointPoint(
            Eigen::Map<const Eigen::VectorXd>(xv.data(), static_cast<Eigen::Index>(xv.size())),
            Eigen::Map<const Eigen::VectorXd>(yv.data(), static_cast<Eigen::Index>(yv.size())));
    }
    config.num_replications = j.value("num_replications", 1L);
    if (j.contains("checkpoints")) {
        config.checkpoints = j.at("checkpoints").get<std::vector<long>>();
    }
    config.base_seed = j.value("base_seed", std::uint64_t{0});
    config.allow_unsafe_stepsize = j.value("allow_unsafe_stepsize", false);
    config.threshold = j.value("threshold", 1e-6);
    return config;
}

/// FNV-1a over the canonical (key-sorted) JSON dump of a config.
inline std::string config_hash(const ExperimentConfig& config) {
    const std::string dump = to_json(config).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace minimax
