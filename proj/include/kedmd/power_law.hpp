#pragma once

#include <utility>
#include <vector>

namespace kedmd {

/// error ~ A * N^B
struct PowerLaw {
    double A = 0.0;
    double B = 0.0;

    [[nodiscard]] double operator()(double n) const;
};

/// Least squares on (ln N, ln error). Needs at least two distinct N and
/// strictly positive errors; throws InputError otherwise.
PowerLaw fit_power_law(const std::vector<std::pair<double, double>>& points);

}  // namespace kedmd
