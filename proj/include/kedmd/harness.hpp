#pragma once

#include "kedmd/dynamics.hpp"
#include "kedmd/kernels.hpp"
#include "kedmd/power_law.hpp"
#include "kedmd/trajectory.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kedmd {

inline constexpr const char* kVersion = "1.0.0";

enum class SystemKind { Linear, SIR, Multiplicative, Identity };

SystemKind parse_system_kind(const std::string& name);
std::string to_string(SystemKind kind);

struct SystemSpec {
    SystemKind kind = SystemKind::Linear;
    double alpha = -0.3;
    double beta = 1.0;
    double gamma = 0.3;
    double sigma = 1e-3;

    [[nodiscard]] std::unique_ptr<StochasticSystem> build() const;
};

/// Everything that determines a sweep. `(config, seed)` fixes the output bytes.
struct ExperimentConfig {
    SystemSpec system;
    double nu = 0.5;
    double ell = 1e3;
    Eigen::VectorXd x0 = Eigen::Vector3d(0.1, 0.1, 0.1);
    int horizon = 30;
    std::vector<std::int64_t> n_sweep{25, 50, 100, 200, 400, 800};
    int n_repeats = 10;
    int n_realizations = 30;
    int n_zeta = 30;
    std::optional<double> ridge;  // unset: 1e-10 * N
    std::uint64_t seed = 42;
    double delta = 1e-15;
    double c1 = 0.5;
    ErrorMetric metric = ErrorMetric::MaxOverTime;

    [[nodiscard]] MaternKernel kernel() const { return MaternKernel(nu, ell); }
    [[nodiscard]] TrajectoryConfig trajectory() const;
    [[nodiscard]] double ridge_for(std::int64_t n) const;
    void validate() const;
};

/// Experiment defaults for each system (linear and SIR follow the reference
/// experiments; multiplicative and identity are small test setups).
ExperimentConfig default_config(SystemKind kind);

/// Flat YAML file. `system` selects the defaults, the remaining keys override
/// them. Unknown keys are rejected.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& yaml_text);

struct ErrorRow {
    std::int64_t n = 0;
    int repeat = 0;
    double error = 0.0;
};

struct CurvePoint {
    std::int64_t n = 0;
    double mean_error = 0.0;
    double std_error = 0.0;  // sample standard deviation over repeats
    double bound = 0.0;      // C_tilde(delta) / sqrt(N)
};

struct SweepResult {
    ExperimentConfig config;
    std::vector<ErrorRow> errors;     // (N, repeat) order
    std::vector<CurvePoint> curve;    // one per distinct N, ascending
    std::optional<PowerLaw> fit;      // over (N, mean_error); needs >= 2 distinct N
};

/// One cell: fresh training data, fit, predicted mean vs empirical true mean.
double sweep_cell(const ExperimentConfig& cfg, const StochasticSystem& system, std::int64_t n, int repeat);

/// Every (N, repeat) cell. Cells run in parallel under Execution::Parallel;
/// rows are always stored in (N, repeat) order and are identical for both modes.
SweepResult run_sweep(const ExperimentConfig& cfg, Execution exec = Execution::Parallel);

/// Per-N statistics, bound values and power-law fit from raw rows.
SweepResult summarize(const ExperimentConfig& cfg, std::vector<ErrorRow> rows);

/// errors.csv, fit.csv and meta.json under `dir` (created if missing).
void emit_results(const SweepResult& result, const std::filesystem::path& dir);

void write_errors_csv(std::ostream& os, const std::vector<ErrorRow>& rows);
void write_fit_csv(std::ostream& os, const SweepResult& result);
std::string manifest_json(const SweepResult& result);
std::vector<ErrorRow> read_errors_csv(std::istream& is);

}  // namespace kedmd
