#include "kedmd/bounds.hpp"

#include "kedmd/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace kedmd::bounds {

namespace {

void check_kernel_constants(double c1, double k_inf) {
    if (!(k_inf > 0.0) || !std::isfinite(k_inf)) throw InputError(fmt::format("k_inf must be positive, got {}", k_inf));
    if (!(c1 > 0.0)) throw InputError(fmt::format("c1 must be positive, got {}", c1));
    if (c1 > std::sqrt(k_inf)) {
        throw InputError(fmt::format("c1 = {} exceeds sqrt(k_inf) = {}", c1, std::sqrt(k_inf)));
    }
}

void check_n(std::int64_t n) {
    if (n < 1) throw InputError(fmt::format("sample count N must be >= 1, got {}", n));
}

double hoeffding_radius(double delta, double k_inf) { return std::sqrt(8.0 * k_inf * std::log(2.0 / delta)); }

}  // namespace

double c_delta(const BoundInputs& in) {
    check_kernel_constants(in.c1, in.k_inf);
    check_n(in.n);
    if (!(in.delta > 0.0 && in.delta < 1.0)) throw InputError(fmt::format("delta must lie in (0, 1), got {}", in.delta));
    return (2.0 / in.c1 + std::sqrt(in.k_inf) / (in.c1 * in.c1)) * hoeffding_radius(in.delta, in.k_inf);
}

bool is_admissible(const BoundInputs& in) {
    return in.delta > 2.0 * std::exp(-static_cast<double>(in.n) * in.c1 * in.c1 / (8.0 * in.k_inf));
}

double c_tilde(double delta, double k_inf) {
    if (!(k_inf > 0.0) || !std::isfinite(k_inf)) throw InputError(fmt::format("k_inf must be positive, got {}", k_inf));
    if (!(delta > 0.0 && delta <= 2.0)) throw InputError(fmt::format("delta must lie in (0, 2], got {}", delta));
    return 3.0 / std::sqrt(k_inf) * hoeffding_radius(delta, k_inf);
}

double delta_adm(std::int64_t n, double c1, double k_inf) {
    check_n(n);
    check_kernel_constants(c1, k_inf);
    return 2.0 * std::exp(-static_cast<double>(n - 1) * c1 * c1 / (8.0 * k_inf));
}

double delta_max(std::int64_t n) {
    check_n(n);
    const double failure = 1.0 - 2.0 * std::exp(-static_cast<double>(n) / 8.0);
    return failure * failure;
}

bool delta_max_is_probability(std::int64_t n) { return 2.0 * std::exp(-static_cast<double>(n) / 8.0) < 1.0; }

BoundReport report(const BoundInputs& in) {
    BoundReport r;
    r.C_delta = c_delta(in);
    r.C_tilde = c_tilde(in.delta, in.k_inf);
    r.delta_adm = delta_adm(in.n, in.c1, in.k_inf);
    r.delta_max = delta_max(in.n);
    r.success_prob_squared = std::pow(1.0 - in.delta, 2);
    r.success_prob_cubed = std::pow(1.0 - in.delta, 3);
    r.admissible = is_admissible(in);
    r.delta_adm_is_probability = r.delta_adm < 1.0;
    r.delta_max_is_probability = delta_max_is_probability(in.n);
    return r;
}

std::vector<std::pair<std::int64_t, double>> bound_curve(const std::vector<std::int64_t>& n_values, double delta,
                                                         double c1, double k_inf) {
    check_kernel_constants(c1, k_inf);
    const double constant = c_tilde(delta, k_inf);
    std::vector<std::pair<std::int64_t, double>> curve;
    curve.reserve(n_values.size());
    for (auto n : n_values) {
        check_n(n);
        curve.emplace_back(n, constant / std::sqrt(static_cast<double>(n)));
    }
    return curve;
}

std::vector<TableRow> admissibility_table(const std::vector<std::int64_t>& n_values, double c1, double k_inf) {
    std::vector<TableRow> rows;
    rows.reserve(n_values.size());
    for (auto n : n_values) {
        TableRow row;
        row.n = n;
        row.delta_adm = delta_adm(n, c1, k_inf);
        row.success_percent = std::pow(1.0 - row.delta_adm, 2) * 100.0;
        row.c_tilde = c_tilde(row.delta_adm, k_inf);
        row.valid_probability = row.delta_adm < 1.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace kedmd::bounds
