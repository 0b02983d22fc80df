#pragma once

#include <algorithm>
#include <optional>

#include <Eigen/Core>

#include "minimax/errors.hpp"
#include "minimax/joint_point.hpp"

namespace minimax {

/// Per-block smoothness / strong-convexity constants plus the aggregates
/// mu = min of the strong-convexity pair, L = max of the four Lipschitz
/// constants, kappa = L / mu.
struct RegularityConstants {
    double mu_x = 0.0;
    double mu_y = 0.0;
    double L_x = 0.0;
    double L_y = 0.0;
    double L_xy = 0.0;
    double L_yx = 0.0;

    double mu() const { return std::min(mu_x, mu_y); }
    double L() const { return std::max({L_x, L_y, L_xy, L_yx}); }
    double kappa() const { return L() / mu(); }

    void validate() const {
        for (double c : {mu_x, mu_y, L_x, L_y, L_xy, L_yx}) {
            if (!(c > 0.0)) {
                throw InputError("RegularityConstants: all block constants must be positive");
            }
        }
        if (!(mu() <= L())) {
            throw InputError("RegularityConstants: mu must not exceed L");
        }
    }
};

/// Smooth strongly-convex-strongly-concave saddle problem
/// min_x max_y f(x, y) with certified regularity constants.
///
/// Implementations hold no mutable evaluation state; gradients are
/// deterministic functions of the point, safe for concurrent evaluation.
class SaddleProblem {
public:
    virtual ~SaddleProblem() = default;

    virtual Eigen::Index m() const = 0;
    virtual Eigen::Index n() const = 0;
    virtual const RegularityConstants& constants() const = 0;

    virtual Eigen::VectorXd grad_x(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const = 0;
    virtual Eigen::VectorXd grad_y(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const = 0;

    virtual bool has_known_saddle() const { return false; }
    virtual JointPoint saddle() const {
        throw CapabilityError("problem has no known saddle point");
    }

    virtual bool has_closed_form_value() const { return false; }
    virtual double value(const Eigen::VectorXd&, const Eigen::VectorXd&) const {
        throw CapabilityError("problem has no closed-form value");
    }

    void require_dims(const JointPoint& z) const {
        if (z.m() != m() || z.n() != n()) {
            throw InputError("point dimensions do not match problem");
        }
    }
};

/// The stacked gradient operator Phi(z) = (grad_x f, -grad_y f).
/// Its unique zero is the saddle point.
inline Eigen::VectorXd phi(const SaddleProblem& problem, const JointPoint& z) {
    problem.require_dims(z);
    Eigen::VectorXd out(problem.m() + problem.n());
    out.head(problem.m()) = problem.grad_x(z.x, z.y);
    out.tail(problem.n()) = -problem.grad_y(z.x, z.y);
    return out;
}

}  // namespace minimax
