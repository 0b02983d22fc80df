#pragma once

#include <Eigen/Core>

#include "minimax/errors.hpp"

namespace minimax {

/// Concatenated primal-dual iterate z = (x, y) in R^{m+n}.
struct JointPoint {
    Eigen::VectorXd x;
    Eigen::VectorXd y;

    JointPoint() = default;
    JointPoint(Eigen::VectorXd x_, Eigen::VectorXd y_)
        : x(std::move(x_)), y(std::move(y_)) {
        if (x.size() < 1 || y.size() < 1) {
            throw InputError("JointPoint: both blocks must be nonempty");
        }
    }

    Eigen::Index m() const { return x.size(); }
    Eigen::Index n() const { return y.size(); }
    Eigen::Index dim() const { return x.size() + y.size(); }

    bool is_finite() const { return x.allFinite() && y.allFinite(); }

    Eigen::VectorXd stacked() const {
        Eigen::VectorXd s(dim());
        s << x, y;
        return s;
    }

    static JointPoint from_stacked(const Eigen::VectorXd& s, Eigen::Index m) {
        if (m < 1 || s.size() - m < 1) {
            throw InputError("JointPoint: invalid split of stacked vector");
        }
        return JointPoint(s.head(m), s.tail(s.size() - m));
    }
};

inline void require_same_dims(const JointPoint& a, const JointPoint& b) {
    if (a.m() != b.m() || a.n() != b.n()) {
        throw InputError("JointPoint dimension mismatch");
    }
}

/// Block-wise squared Euclidean distance ||x-x'||^2 + ||y-y'||^2.
inline double squared_distance(const JointPoint& z, const JointPoint& zhat) {
    require_same_dims(z, zhat);
    return (z.x - zhat.x).squaredNorm() + (z.y - zhat.y).squaredNorm();
}

}  // namespace minimax
