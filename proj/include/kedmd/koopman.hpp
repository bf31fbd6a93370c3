#pragma once

#include "kedmd/dynamics.hpp"
#include "kedmd/kernels.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <memory>

namespace kedmd {

/// Element mu = sum_i coeffs(i) * Phi(x_i) of the span of training features.
struct LiftedState {
    Eigen::VectorXd coeffs;
};

/// Empirical Koopman model on the span H_N of the training features.
///
/// Coefficient conventions, with G = Phi_N(X) (+ ridge) and
/// P = Phi_N(X+), P(i, j) = k(x_i, x+_j):
///
///   U     = G^{-1} P^T   matrix of U_N acting on coefficients
///   Ustar = G^{-1} P     matrix of its H_N-adjoint (mean propagation)
///   B_N a = X a          lifting back a coefficient vector to state space
///
/// Immutable after `fit`; every member function is const and thread-safe.
class KoopmanModel {
public:
    [[nodiscard]] static KoopmanModel fit(const DataSet& data, const MaternKernel& kernel, double ridge);
    /// Fit with `default_ridge(N)`.
    [[nodiscard]] static KoopmanModel fit(const DataSet& data, const MaternKernel& kernel);

    [[nodiscard]] const MaternKernel& kernel() const noexcept { return kernel_; }
    [[nodiscard]] const Eigen::MatrixXd& states() const noexcept { return X_; }
    [[nodiscard]] const GramMatrix& gram() const noexcept { return gram_; }
    [[nodiscard]] const GramMatrix& gram_cross() const noexcept { return gram_cross_; }
    [[nodiscard]] const Eigen::MatrixXd& U() const noexcept { return U_; }
    [[nodiscard]] const Eigen::MatrixXd& Ustar() const noexcept { return Ustar_; }
    [[nodiscard]] double ridge() const noexcept { return gram_.ridge; }
    [[nodiscard]] Eigen::Index size() const noexcept { return X_.cols(); }
    [[nodiscard]] Eigen::Index dim() const noexcept { return X_.rows(); }

    /// Projection of Phi(x) onto H_N: coeffs = (G + ridge I)^{-1} k(X, x).
    [[nodiscard]] LiftedState embed(const Eigen::VectorXd& x) const;
    /// Batched `embed`; column j of the result holds the coefficients of points.col(j).
    [[nodiscard]] Eigen::MatrixXd embed_many(const Eigen::MatrixXd& points) const;

    [[nodiscard]] LiftedState propagate_mean(const LiftedState& mu) const;
    [[nodiscard]] Eigen::VectorXd lift_back(const LiftedState& mu) const;

    /// Per-coordinate bounding box of the training states.
    [[nodiscard]] bool inside_training_box(const Eigen::VectorXd& x) const;

    /// Text dump of (kernel params, ridge, X, U, Ustar); see README for the layout.
    void save(std::ostream& os) const;

private:
    KoopmanModel(MaternKernel kernel, Eigen::MatrixXd X, GramMatrix gram, GramMatrix gram_cross);

    void check_coeffs(const LiftedState& mu) const;

    MaternKernel kernel_;
    Eigen::MatrixXd X_;
    GramMatrix gram_;
    GramMatrix gram_cross_;
    std::shared_ptr<const RegularizedSolver> solver_;
    Eigen::MatrixXd U_;
    Eigen::MatrixXd Ustar_;
    Eigen::VectorXd lower_;
    Eigen::VectorXd upper_;
};

}  // namespace kedmd
