#pragma once

#include <cmath>
#include <utility>

#include <Eigen/Dense>

#include "minimax/errors.hpp"
#include "minimax/problem.hpp"
#include "minimax/rng.hpp"

namespace minimax {

/// f(x, y) = (mu/2) x^2 + L x y - (mu/2) y^2 on R x R.
/// Saddle point at the origin; kappa = L / mu. This is the tight instance
/// for GDA: the deterministic contraction of ||z||^2 per step is exactly
/// (1 - alpha mu)^2 + alpha^2 L^2.
class ScalarBilinearQuadratic final : public SaddleProblem {
public:
    ScalarBilinearQuadratic(double mu, double L) : mu_(mu), L_(L) {
        if (!(mu > 0.0) || !(L >= mu)) {
            throw InputError("ScalarBilinearQuadratic requires 0 < mu <= L");
        }
        constants_ = RegularityConstants{mu, mu, mu, mu, L, L};
        constants_.validate();
    }

    Eigen::Index m() const override { return 1; }
    Eigen::Index n() const override { return 1; }
    const RegularityConstants& constants() const override { return constants_; }

    Eigen::VectorXd grad_x(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const override {
        Eigen::VectorXd g(1);
        g[0] = mu_ * x[0] + L_ * y[0];
        return g;
    }
    Eigen::VectorXd grad_y(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const override {
        Eigen::VectorXd g(1);
        g[0] = L_ * x[0] - mu_ * y[0];
        return g;
    }

    bool has_known_saddle() const override { return true; }
    JointPoint saddle() const override {
        return JointPoint(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1));
    }

    bool has_closed_form_value() const override { return true; }
    double value(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const override {
        return 0.5 * mu_ * x[0] * x[0] + L_ * x[0] * y[0] - 0.5 * mu_ * y[0] * y[0];
    }

    double mu() const { return mu_; }
    double L() const { return L_; }

private:
    double mu_, L_;
    RegularityConstants constants_;
};

/// f(x, y) = 1/2 x'Ax + x'By - 1/2 y'Cy + a'x + b'y with A, C symmetric
/// positive definite. Declared constants are certified by construction
/// (eigenvalues are prescribed, not estimated).
class GeneralQuadraticSaddle final : public SaddleProblem {
public:
    GeneralQuadraticSaddle(Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::MatrixXd C,
                           Eigen::VectorXd a, Eigen::VectorXd b,
                           RegularityConstants constants)
        : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)),
          a_(std::move(a)), b_(std::move(b)), constants_(constants) {
        if (A_.rows() != A_.cols() || C_.rows() != C_.cols() ||
            B_.rows() != A_.rows() || B_.cols() != C_.rows() ||
            a_.size() != A_.rows() || b_.size() != C_.rows()) {
            throw InputError("GeneralQuadraticSaddle: inconsistent matrix dimensions");
        }
        constants_.validate();
    }

    Eigen::Index m() const override { return A_.rows(); }
    Eigen::Index n() const override { return C_.rows(); }
    const RegularityConstants& constants() const override { return constants_; }

    Eigen::VectorXd grad_x(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const override {
        return A_ * x + B_ * y + a_;
    }
    Eigen::VectorXd grad_y(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const override {
        return B_.transpose() * x - C_ * y + b_;
    }

    bool has_known_saddle() const override { return true; }
    JointPoint saddle() const override;

    bool has_closed_form_value() const override { return true; }
    double value(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const override {
        return 0.5 * x.dot(A_ * x) + x.dot(B_ * y) - 0.5 * y.dot(C_ * y) +
               a_.dot(x) + b_.dot(y);
    }

    const Eigen::MatrixXd& A() const { return A_; }
    const Eigen::MatrixXd& B() const { return B_; }
    const Eigen::MatrixXd& C() const { return C_; }
    const Eigen::VectorXd& a() const { return a_; }
    const Eigen::VectorXd& b() const { return b_; }

private:
    Eigen::MatrixXd A_, B_, C_;
    Eigen::VectorXd a_, b_;
    RegularityConstants constants_;
};

/// Solves Phi(z*) = 0 for a quadratic instance via the linear system
/// [A, B; -B', C] (x, y) = (-a, b). Nonsingular whenever mu > 0.
inline JointPoint solve_saddle(const GeneralQuadraticSaddle& problem) {
    const Eigen::Index m = problem.m();
    const Eigen::Index n = problem.n();
    Eigen::MatrixXd K(m + n, m + n);
    K.topLeftCorner(m, m) = problem.A();
    K.topRightCorner(m, n) = problem.B();
    K.bottomLeftCorner(n, m) = -problem.B().transpose();
    K.bottomRightCorner(n, n) = problem.C();
    Eigen::VectorXd rhs(m + n);
    rhs.head(m) = -problem.a();
    rhs.tail(n) = problem.b();

    Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
    if (!lu.isInvertible()) {
        throw CertificationError("saddle system is singular; declared constants are invalid");
    }
    Eigen::VectorXd sol = lu.solve(rhs);
    return JointPoint::from_stacked(sol, m);
}

inline JointPoint GeneralQuadraticSaddle::saddle() const {
    return solve_saddle(*this);
}

namespace detail {

/// Random orthogonal d x d matrix (QR of a Gaussian matrix, sign-fixed R).
inline Eigen::MatrixXd random_orthogonal(Eigen::Index d, CounterRng& rng) {
    Eigen::MatrixXd G(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            G(i, j) = rng.next_gaussian();
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
    Eigen::MatrixXd Q = qr.householderQ();
    Eigen::VectorXd diag = qr.matrixQR().diagonal();
    for (Eigen::Index j = 0; j < d; ++j) {
        if (diag[j] < 0.0) Q.col(j) = -Q.col(j);
    }
    return Q;
}

/// Symmetric matrix with prescribed spectrum; returns (matrix, min, max).
inline Eigen::MatrixXd spd_with_spectrum(Eigen::Index d, double lo, double hi,
                                         CounterRng& rng, double& out_min, double& out_max) {
    Eigen::VectorXd eig(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        eig[i] = lo + (hi - lo) * rng.next_unit();
    }
    out_min = eig.minCoeff();
    out_max = eig.maxCoeff();
    Eigen::MatrixXd Q = random_orthogonal(d, rng);
    Eigen::MatrixXd M = Q * eig.asDiagonal() * Q.transpose();
    return 0.5 * (M + M.transpose());
}

}  // namespace detail

/// Deterministic-in-seed random quadratic instance. A and C get eigenvalues
/// sampled in [mu, L]; B gets singular values in (0, L]. Declared constants
/// are the sampled extremes, so certification holds exactly.
inline GeneralQuadraticSaddle random_quadratic(std::uint64_t seed, Eigen::Index m,
                                               Eigen::Index n, double mu, double L,
                                               bool with_linear_terms = false) {
    if (!(mu > 0.0) || !(mu <= L)) {
        throw InputError("random_quadratic requires 0 < mu <= L");
    }
    if (m < 1 || n < 1) {
        throw InputError("random_quadratic requires m, n >= 1");
    }
    CounterRng rng = CounterRng::from_seed(seed);

    RegularityConstants rc;
    Eigen::MatrixXd A = detail::spd_with_spectrum(m, mu, L, rng, rc.mu_x, rc.L_x);
    Eigen::MatrixXd C = detail::spd_with_spectrum(n, mu, L, rng, rc.mu_y, rc.L_y);

    const Eigen::Index r = std::min(m, n);
    Eigen::VectorXd sv(r);
    for (Eigen::Index i = 0; i < r; ++i) {
        // singular values in (0, L]; open at 0 so the coupling never vanishes
        sv[i] = L * (1.0 - rng.next_unit());
    }
    Eigen::MatrixXd U = detail::random_orthogonal(m, rng);
    Eigen::MatrixXd V = detail::random_orthogonal(n, rng);
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(m, n);
    for (Eigen::Index i = 0; i < r; ++i) S(i, i) = sv[i];
    Eigen::MatrixXd B = U * S * V.transpose();
    rc.L_xy = rc.L_yx = sv.maxCoeff();

    Eigen::VectorXd a = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    if (with_linear_terms) {
        for (Eigen::Index i = 0; i < m; ++i) a[i] = rng.next_gaussian();
        for (Eigen::Index i = 0; i < n; ++i) b[i] = rng.next_gaussian();
    }
    return GeneralQuadraticSaddle(std::move(A), std::move(B), std::move(C),
                                  std::move(a), std::move(b), rc);
}

}  // namespace minimax
