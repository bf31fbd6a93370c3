#include "kedmd/kernels.hpp"

#include "kedmd/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace kedmd {

Smoothness smoothness_from_value(double nu) {
    if (nu == 0.5) return Smoothness::Half;
    if (nu == 1.5) return Smoothness::ThreeHalves;
    if (nu == 2.5) return Smoothness::FiveHalves;
    throw UnsupportedOrderError(
        fmt::format("Matérn order nu = {} is not supported (closed forms exist for 0.5, 1.5, 2.5)", nu));
}

double smoothness_value(Smoothness s) noexcept {
    switch (s) {
        case Smoothness::Half: return 0.5;
        case Smoothness::ThreeHalves: return 1.5;
        case Smoothness::FiveHalves: return 2.5;
    }
    return 0.0;
}

MaternKernel::MaternKernel(double nu, double length_scale)
    : MaternKernel(smoothness_from_value(nu), length_scale) {}

MaternKernel::MaternKernel(Smoothness nu, double length_scale) : nu_(nu), ell_(length_scale) {
    if (!(length_scale > 0.0) || !std::isfinite(length_scale)) {
        throw InputError(fmt::format("kernel length scale must be positive and finite, got {}", length_scale));
    }
}

double MaternKernel::of_distance(double r) const noexcept {
    const double s = r / ell_;
    switch (nu_) {
        case Smoothness::Half:
            return std::exp(-s);
        case Smoothness::ThreeHalves: {
            const double a = std::sqrt(3.0) * s;
            return (1.0 + a) * std::exp(-a);
        }
        case Smoothness::FiveHalves: {
            const double a = std::sqrt(5.0) * s;
            return (1.0 + a + 5.0 * s * s / 3.0) * std::exp(-a);
        }
    }
    return 0.0;
}

double MaternKernel::operator()(const Eigen::Ref<const Eigen::VectorXd>& x,
                                const Eigen::Ref<const Eigen::VectorXd>& y) const {
    if (x.size() != y.size()) {
        throw InputError(fmt::format("kernel arguments differ in dimension ({} vs {})", x.size(), y.size()));
    }
    return of_distance((x - y).norm());
}

double default_ridge(Eigen::Index n) noexcept { return 1e-10 * static_cast<double>(n); }

namespace {

void check_gram_inputs(const Eigen::MatrixXd& rows, const Eigen::MatrixXd& cols, double ridge) {
    if (rows.cols() == 0 || cols.cols() == 0) throw InputError("Gram matrix requested for an empty point set");
    if (rows.rows() != cols.rows()) {
        throw InputError(fmt::format("Gram point sets differ in dimension ({} vs {})", rows.rows(), cols.rows()));
    }
    if (!(ridge >= 0.0)) throw InputError(fmt::format("ridge must be nonnegative, got {}", ridge));
}

inline double entry(const MaternKernel& kernel, const Eigen::MatrixXd& rows, const Eigen::MatrixXd& cols,
                    Eigen::Index i, Eigen::Index j) {
    return kernel.of_distance((rows.col(i) - cols.col(j)).norm());
}

}  // namespace

GramMatrix gram(const MaternKernel& kernel, const Eigen::MatrixXd& rows, const Eigen::MatrixXd& cols,
                double ridge) {
    check_gram_inputs(rows, cols, ridge);
    const Eigen::Index n = rows.cols();
    const Eigen::Index m = cols.cols();
    GramMatrix g{Eigen::MatrixXd(n, m), ridge};
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) g.entries(i, j) = entry(kernel, rows, cols, i, j);
    }
    return g;
}

GramMatrix gram_serial(const MaternKernel& kernel, const Eigen::MatrixXd& rows, const Eigen::MatrixXd& cols,
                       double ridge) {
    check_gram_inputs(rows, cols, ridge);
    GramMatrix g{Eigen::MatrixXd(rows.cols(), cols.cols()), ridge};
    for (Eigen::Index j = 0; j < cols.cols(); ++j) {
        for (Eigen::Index i = 0; i < rows.cols(); ++i) g.entries(i, j) = entry(kernel, rows, cols, i, j);
    }
    return g;
}

Eigen::VectorXd kernel_column(const MaternKernel& kernel, const Eigen::MatrixXd& points,
                              const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (points.rows() != x.size()) {
        throw InputError(fmt::format("state has dimension {}, expected {}", x.size(), points.rows()));
    }
    Eigen::VectorXd out(points.cols());
    for (Eigen::Index i = 0; i < points.cols(); ++i) out(i) = kernel.of_distance((points.col(i) - x).norm());
    return out;
}

RegularizedSolver::RegularizedSolver(const GramMatrix& g) : n_(g.size()) {
    if (g.entries.rows() != g.entries.cols()) {
        throw InputError(fmt::format("Gram matrix must be square, got {}x{}", g.entries.rows(), g.entries.cols()));
    }
    if (!(g.ridge >= 0.0)) throw InputError(fmt::format("ridge must be nonnegative, got {}", g.ridge));
    Eigen::MatrixXd shifted = g.entries;
    shifted.diagonal().array() += g.ridge;
    llt_.compute(shifted);
    if (llt_.info() != Eigen::Success) {
        const Eigen::LDLT<Eigen::MatrixXd> ldlt(shifted);
        const double pivot = ldlt.vectorD().minCoeff();
        throw NumericalError(fmt::format(
            "Cholesky factorization of the {}x{} Gram matrix failed (ridge {:g}, smallest pivot {:.6e}); "
            "increase the ridge",
            n_, n_, g.ridge, pivot));
    }
}

Eigen::MatrixXd RegularizedSolver::solve(const Eigen::MatrixXd& rhs) const {
    if (rhs.rows() != n_) {
        throw InputError(fmt::format("right-hand side has {} rows, Gram matrix is {}x{}", rhs.rows(), n_, n_));
    }
    return llt_.solve(rhs);
}

Eigen::VectorXd RegularizedSolver::solve(const Eigen::VectorXd& rhs) const {
    if (rhs.size() != n_) {
        throw InputError(fmt::format("right-hand side has {} rows, Gram matrix is {}x{}", rhs.size(), n_, n_));
    }
    return llt_.solve(rhs);
}

Eigen::MatrixXd solve_regularized(const GramMatrix& g, const Eigen::MatrixXd& rhs) {
    return RegularizedSolver(g).solve(rhs);
}

}  // namespace kedmd
