#include "kedmd/power_law.hpp"

#include "kedmd/errors.hpp"

#include <Eigen/Dense>
#include <fmt/format.h>

#include <cmath>

namespace kedmd {

double PowerLaw::operator()(double n) const { return A * std::pow(n, B); }

PowerLaw fit_power_law(const std::vector<std::pair<double, double>>& points) {
    const auto m = static_cast<Eigen::Index>(points.size());
    if (m < 2) throw InputError(fmt::format("power-law fit needs at least 2 points, got {}", m));
    Eigen::MatrixXd design(m, 2);
    Eigen::VectorXd target(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto [n, err] = points[static_cast<std::size_t>(i)];
        if (!(n > 0.0)) throw InputError(fmt::format("power-law fit: N must be positive, got {}", n));
        if (!(err > 0.0) || !std::isfinite(err)) {
            throw InputError(fmt::format("power-law fit: error must be positive and finite, got {} at N = {}", err, n));
        }
        design(i, 0) = 1.0;
        design(i, 1) = std::log(n);
        target(i) = std::log(err);
    }
    if (design.col(1).maxCoeff() == design.col(1).minCoeff()) {
        throw InputError("power-law fit: all N are equal, slope is undetermined");
    }
    const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(target);
    return {std::exp(coef(0)), coef(1)};
}

}  // namespace kedmd
