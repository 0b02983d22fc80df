#pragma once

#include <cmath>
#include <memory>
#include <string>

#include <Eigen/Core>

#include "minimax/errors.hpp"
#include "minimax/problem.hpp"
#include "minimax/rng.hpp"

namespace minimax {

enum class NoiseKind {
    block_isotropic_gaussian,   // per-block covariance (sigma^2 / dim) I, E||noise||^2 = sigma^2 per block
    per_coordinate_gaussian,    // each coordinate N(0, sigma^2)
    bounded_uniform,            // each coordinate U[-c, c] with c set so E||noise||^2 = sigma^2 per block
};

inline std::string to_string(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::block_isotropic_gaussian: return "block_isotropic_gaussian";
        case NoiseKind::per_coordinate_gaussian: return "per_coordinate_gaussian";
        case NoiseKind::bounded_uniform: return "bounded_uniform";
    }
    throw InputError("unknown noise kind");
}

inline NoiseKind noise_kind_from_string(const std::string& s) {
    if (s == "block_isotropic_gaussian") return NoiseKind::block_isotropic_gaussian;
    if (s == "per_coordinate_gaussian") return NoiseKind::per_coordinate_gaussian;
    if (s == "bounded_uniform") return NoiseKind::bounded_uniform;
    throw InputError("unknown noise kind: " + s);
}

struct NoiseModel {
    NoiseKind kind = NoiseKind::block_isotropic_gaussian;
    double sigma = 0.0;

    void validate() const {
        if (!(sigma >= 0.0)) throw InputError("NoiseModel: sigma must be nonnegative");
    }
};

/// Unbiased stochastic gradient oracle: Phi(z) plus independent x- and
/// y-block noise with E||noise||^2 <= sigma^2 per block.
///
/// One oracle instance serves one worker; parallel replications must each
/// hold a fork()ed stream. Draw order per call is fixed (x block first,
/// coordinate by coordinate, then y block) so seeded runs are bit-stable.
class NoisyOracle {
public:
    NoisyOracle(std::shared_ptr<const SaddleProblem> problem, NoiseModel noise,
                std::uint64_t base_seed)
        : problem_(std::move(problem)), noise_(noise),
          rng_(CounterRng::from_seed(base_seed)) {
        noise_.validate();
    }

    const SaddleProblem& problem() const { return *problem_; }
    std::shared_ptr<const SaddleProblem> problem_ptr() const { return problem_; }
    const NoiseModel& noise() const { return noise_; }

    /// Sample of the stochastic operator: the y-block noise enters through
    /// the same sign flip as Phi's y block. With sigma = 0 this is
    /// bit-identical to phi().
    Eigen::VectorXd sample_phi(const JointPoint& z) {
        Eigen::VectorXd out = phi(*problem_, z);
        if (noise_.sigma == 0.0) return out;
        const Eigen::Index m = problem_->m();
        const Eigen::Index n = problem_->n();
        for (Eigen::Index i = 0; i < m; ++i) {
            out[i] += draw_coordinate(m);
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            out[m + i] -= draw_coordinate(n);
        }
        return out;
    }

    /// Independent substream for replication r; deterministic in
    /// (base seed, r), unaffected by draws on the parent after forking.
    NoisyOracle fork_stream(std::uint64_t replication_index) const {
        NoisyOracle child(*this);
        child.rng_ = rng_.fork(replication_index);
        return child;
    }

private:
    double draw_coordinate(Eigen::Index block_dim) {
        switch (noise_.kind) {
            case NoiseKind::block_isotropic_gaussian:
                return noise_.sigma / std::sqrt(static_cast<double>(block_dim)) *
                       rng_.next_gaussian();
            case NoiseKind::per_coordinate_gaussian:
                return noise_.sigma * rng_.next_gaussian();
            case NoiseKind::bounded_uniform: {
                // E||noise_block||^2 = dim * c^2 / 3 = sigma^2
                const double c =
                    noise_.sigma * std::sqrt(3.0 / static_cast<double>(block_dim));
                return rng_.next_symmetric_uniform(c);
            }
        }
        throw InputError("unknown noise kind");
    }

    std::shared_ptr<const SaddleProblem> problem_;
    NoiseModel noise_;
    CounterRng rng_;
};

}  // namespace minimax
