#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace kedmd::bounds {

/// Inputs of the probabilistic kEDMD error bound.
///
/// `c1` is the coercivity constant of the covariance operator; it is not
/// computable from data and must satisfy 0 < c1 <= sqrt(k_inf).
struct BoundInputs {
    std::int64_t n = 1;
    double c1 = 0.5;
    double k_inf = 1.0;
    double delta = 0.1;
};

struct BoundReport {
    double C_delta = 0.0;
    double C_tilde = 0.0;
    double delta_adm = 0.0;
    double delta_max = 0.0;
    double success_prob_squared = 0.0;  // (1 - delta)^2, Koopman operator bound
    double success_prob_cubed = 0.0;    // (1 - delta)^3, mean trajectory bound
    bool admissible = false;            // delta > 2 exp(-N c1^2 / (8 k_inf))
    bool delta_adm_is_probability = false;
    bool delta_max_is_probability = false;
};

/// C_delta = (2/c1 + sqrt(k_inf)/c1^2) * sqrt(8 k_inf ln(2/delta)), delta in (0, 1).
double c_delta(const BoundInputs& in);

/// Whether delta exceeds the admissibility threshold 2 exp(-N c1^2 / (8 k_inf)).
bool is_admissible(const BoundInputs& in);

/// c1-free lower estimate of C_delta: (3/sqrt(k_inf)) sqrt(8 k_inf ln(2/delta)).
/// Defined for delta in (0, 2]; equals 3 sqrt(8 ln(2/delta)) when k_inf = 1.
double c_tilde(double delta, double k_inf);

/// Smallest admissible failure parameter: 2 exp(-(N-1) c1^2 / (8 k_inf)).
/// Computed literally; exceeds 1 for small N.
double delta_adm(std::int64_t n, double c1, double k_inf);

/// Maximal success probability (1 - 2 exp(-N/8))^2. Not a probability when
/// 2 exp(-N/8) >= 1, i.e. N <= 8 ln 2; see `delta_max_is_probability`.
double delta_max(std::int64_t n);
bool delta_max_is_probability(std::int64_t n);

/// Every constant for one set of inputs. Validates like `c_delta`.
BoundReport report(const BoundInputs& in);

/// (N, C_tilde(delta) / sqrt(N)) for each N.
std::vector<std::pair<std::int64_t, double>> bound_curve(const std::vector<std::int64_t>& n_values, double delta,
                                                         double c1, double k_inf);

struct TableRow {
    std::int64_t n = 0;
    double delta_adm = 0.0;
    double success_percent = 0.0;  // (1 - delta_adm)^2 * 100
    double c_tilde = 0.0;          // C_tilde evaluated at delta_adm
    bool valid_probability = false;
};

/// Admissible success probability and C_tilde as a function of N.
std::vector<TableRow> admissibility_table(const std::vector<std::int64_t>& n_values, double c1, double k_inf);

}  // namespace kedmd::bounds
