#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cstddef>

namespace kedmd {

/// Half-integer Matérn orders with elementary closed forms.
enum class Smoothness { Half, ThreeHalves, FiveHalves };

/// Maps 0.5 / 1.5 / 2.5 to the enum; anything else throws UnsupportedOrderError.
Smoothness smoothness_from_value(double nu);
double smoothness_value(Smoothness s) noexcept;

/// Stationary Matérn kernel, normalized so that k(x, x) = 1 (hence ||k||_inf = 1).
///
///   nu = 1/2 : exp(-r/l)
///   nu = 3/2 : (1 + sqrt(3) r/l) exp(-sqrt(3) r/l)
///   nu = 5/2 : (1 + sqrt(5) r/l + 5 r^2 / (3 l^2)) exp(-sqrt(5) r/l)
///
/// with r the Euclidean distance.
class MaternKernel {
public:
    MaternKernel(double nu, double length_scale);
    MaternKernel(Smoothness nu, double length_scale);

    [[nodiscard]] Smoothness smoothness() const noexcept { return nu_; }
    [[nodiscard]] double nu() const noexcept { return smoothness_value(nu_); }
    [[nodiscard]] double length_scale() const noexcept { return ell_; }
    [[nodiscard]] static constexpr double sup_norm() noexcept { return 1.0; }

    /// Kernel as a function of the distance r >= 0.
    [[nodiscard]] double of_distance(double r) const noexcept;

    [[nodiscard]] double operator()(const Eigen::Ref<const Eigen::VectorXd>& x,
                                    const Eigen::Ref<const Eigen::VectorXd>& y) const;

private:
    Smoothness nu_;
    double ell_;
};

/// Kernel matrix plus the ridge that is added to its diagonal before solving.
struct GramMatrix {
    Eigen::MatrixXd entries;
    double ridge = 0.0;

    [[nodiscard]] Eigen::Index size() const noexcept { return entries.rows(); }
};

/// Default ridge for an N-point Gram matrix: 1e-10 * N.
double default_ridge(Eigen::Index n) noexcept;

/// Entry (i, j) = k(rows.col(i), cols.col(j)). Points are stored as columns.
/// Parallel over columns; bit-identical to `gram_serial`.
GramMatrix gram(const MaternKernel& kernel, const Eigen::MatrixXd& rows, const Eigen::MatrixXd& cols,
                double ridge = 0.0);

/// Single-threaded reference for `gram`.
GramMatrix gram_serial(const MaternKernel& kernel, const Eigen::MatrixXd& rows, const Eigen::MatrixXd& cols,
                       double ridge = 0.0);

/// Column vector (k(x_i, x))_i over the columns of `points`.
Eigen::VectorXd kernel_column(const MaternKernel& kernel, const Eigen::MatrixXd& points,
                              const Eigen::Ref<const Eigen::VectorXd>& x);

/// Cholesky factorization of G + ridge * I, reusable for many right-hand sides.
class RegularizedSolver {
public:
    explicit RegularizedSolver(const GramMatrix& g);

    [[nodiscard]] Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;
    [[nodiscard]] Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
    [[nodiscard]] Eigen::Index size() const noexcept { return n_; }

private:
    Eigen::Index n_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
};

/// (G + ridge * I)^{-1} * rhs.
Eigen::MatrixXd solve_regularized(const GramMatrix& g, const Eigen::MatrixXd& rhs);

}  // namespace kedmd
