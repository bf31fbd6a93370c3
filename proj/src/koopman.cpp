#include "kedmd/koopman.hpp"

#include "kedmd/errors.hpp"

#include <fmt/format.h>

#include <iomanip>
#include <limits>
#include <ostream>

namespace kedmd {

KoopmanModel::KoopmanModel(MaternKernel kernel, Eigen::MatrixXd X, GramMatrix gram, GramMatrix gram_cross)
    : kernel_(kernel),
      X_(std::move(X)),
      gram_(std::move(gram)),
      gram_cross_(std::move(gram_cross)),
      solver_(std::make_shared<const RegularizedSolver>(gram_)),
      U_(solver_->solve(Eigen::MatrixXd(gram_cross_.entries.transpose()))),
      Ustar_(solver_->solve(gram_cross_.entries)),
      lower_(X_.rowwise().minCoeff()),
      upper_(X_.rowwise().maxCoeff()) {}

KoopmanModel KoopmanModel::fit(const DataSet& data, const MaternKernel& kernel, double ridge) {
    if (data.X.cols() < 1) throw InputError("fit needs at least one snapshot pair");
    if (data.X.rows() != data.Xplus.rows() || data.X.cols() != data.Xplus.cols()) {
        throw InputError(fmt::format("snapshot matrices disagree in shape: X is {}x{}, X+ is {}x{}", data.X.rows(),
                                     data.X.cols(), data.Xplus.rows(), data.Xplus.cols()));
    }
    if (!(ridge >= 0.0)) throw InputError(fmt::format("ridge must be nonnegative, got {}", ridge));
    GramMatrix g = kedmd::gram(kernel, data.X, data.X, ridge);
    GramMatrix cross = kedmd::gram(kernel, data.X, data.Xplus, 0.0);
    return KoopmanModel(kernel, data.X, std::move(g), std::move(cross));
}

KoopmanModel KoopmanModel::fit(const DataSet& data, const MaternKernel& kernel) {
    return fit(data, kernel, default_ridge(data.X.cols()));
}

LiftedState KoopmanModel::embed(const Eigen::VectorXd& x) const {
    return {solver_->solve(kernel_column(kernel_, X_, x))};
}

Eigen::MatrixXd KoopmanModel::embed_many(const Eigen::MatrixXd& points) const {
    if (points.rows() != dim()) {
        throw InputError(fmt::format("points have dimension {}, model expects {}", points.rows(), dim()));
    }
    Eigen::MatrixXd k(size(), points.cols());
    for (Eigen::Index j = 0; j < points.cols(); ++j) k.col(j) = kernel_column(kernel_, X_, points.col(j));
    return solver_->solve(k);
}

void KoopmanModel::check_coeffs(const LiftedState& mu) const {
    if (mu.coeffs.size() != size()) {
        throw InputError(fmt::format("lifted state has {} coefficients, model has {} features", mu.coeffs.size(),
                                     size()));
    }
}

LiftedState KoopmanModel::propagate_mean(const LiftedState& mu) const {
    check_coeffs(mu);
    return {Ustar_ * mu.coeffs};
}

Eigen::VectorXd KoopmanModel::lift_back(const LiftedState& mu) const {
    check_coeffs(mu);
    return X_ * mu.coeffs;
}

bool KoopmanModel::inside_training_box(const Eigen::VectorXd& x) const {
    return (x.array() >= lower_.array()).all() && (x.array() <= upper_.array()).all();
}

namespace {

void write_matrix(std::ostream& os, const char* label, const Eigen::MatrixXd& m) {
    os << label << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
        os << '\n';
    }
}

}  // namespace

void KoopmanModel::save(std::ostream& os) const {
    const auto flags = os.flags();
    const auto precision = os.precision();
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    os << "kedmd-model 1\n";
    os << "nu " << kernel_.nu() << '\n';
    os << "ell " << kernel_.length_scale() << '\n';
    os << "ridge " << ridge() << '\n';
    write_matrix(os, "X", X_);
    write_matrix(os, "U", U_);
    write_matrix(os, "Ustar", Ustar_);
    os.flags(flags);
    os.precision(precision);
}

}  // namespace kedmd
