#include "kedmd/harness.hpp"

#include "kedmd/bounds.hpp"
#include "kedmd/errors.hpp"
#include "kedmd/koopman.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>

namespace kedmd {

double sweep_cell(const ExperimentConfig& cfg, const StochasticSystem& system, std::int64_t n, int repeat) {
    const RandomStream cell =
        RandomStream(cfg.seed).child({static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(repeat)});
    RandomStream sampling = cell.child(StreamPurpose::Sampling);
    const DataSet data = sample_pairs(system, static_cast<Eigen::Index>(n), sampling);
    const KoopmanModel model = KoopmanModel::fit(data, cfg.kernel(), cfg.ridge_for(n));

    const TrajectoryConfig traj = cfg.trajectory();
    // Realizations inside one cell run serially; parallelism is over cells.
    const TrajectoryBundle reference =
        simulate_true(system, traj, cell.child(StreamPurpose::TrueTrajectories), Execution::Serial);
    return trajectory_error(reference.mean, predict_mean(model, traj), cfg.metric);
}

namespace {

[[noreturn]] void rethrow_with_context(std::exception_ptr error, std::int64_t n, int repeat) {
    const auto where = fmt::format("sweep cell (N = {}, repeat = {}): ", n, repeat);
    try {
        std::rethrow_exception(error);
    } catch (const UnsupportedOrderError& e) {
        throw UnsupportedOrderError(where + e.what());
    } catch (const InputError& e) {
        throw InputError(where + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError(where + e.what());
    } catch (const IoError& e) {
        throw IoError(where + e.what());
    }
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg, Execution exec) {
    cfg.validate();
    const auto system = cfg.system.build();

    struct Cell {
        std::int64_t n;
        int repeat;
        double error = 0.0;
        std::exception_ptr failure;
    };
    std::vector<Cell> cells;
    for (auto n : cfg.n_sweep) {
        for (int r = 0; r < cfg.n_repeats; ++r) cells.push_back({n, r, 0.0, nullptr});
    }

    auto run_cell = [&](Cell& c) {
        try {
            c.error = sweep_cell(cfg, *system, c.n, c.repeat);
        } catch (...) {
            c.failure = std::current_exception();
        }
    };

    const auto count = static_cast<std::ptrdiff_t>(cells.size());
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < count; ++i) run_cell(cells[static_cast<std::size_t>(i)]);
    } else {
        for (std::ptrdiff_t i = 0; i < count; ++i) run_cell(cells[static_cast<std::size_t>(i)]);
    }

    std::vector<ErrorRow> rows;
    rows.reserve(cells.size());
    for (const auto& c : cells) {
        if (c.failure) rethrow_with_context(c.failure, c.n, c.repeat);
        rows.push_back({c.n, c.repeat, c.error});
    }
    return summarize(cfg, std::move(rows));
}

SweepResult summarize(const ExperimentConfig& cfg, std::vector<ErrorRow> rows) {
    SweepResult result;
    result.config = cfg;
    result.errors = std::move(rows);

    std::map<std::int64_t, std::vector<double>> by_n;
    for (const auto& row : result.errors) by_n[row.n].push_back(row.error);

    std::vector<std::int64_t> ns;
    for (const auto& [n, errs] : by_n) ns.push_back(n);
    if (ns.empty()) return result;

    const auto bound = bounds::bound_curve(ns, cfg.delta, cfg.c1, MaternKernel::sup_norm());
    std::vector<std::pair<double, double>> fit_points;
    std::size_t k = 0;
    for (const auto& [n, errs] : by_n) {
        CurvePoint p;
        p.n = n;
        for (double e : errs) p.mean_error += e;
        p.mean_error /= static_cast<double>(errs.size());
        if (errs.size() > 1) {
            double ss = 0.0;
            for (double e : errs) ss += (e - p.mean_error) * (e - p.mean_error);
            p.std_error = std::sqrt(ss / static_cast<double>(errs.size() - 1));
        }
        p.bound = bound[k++].second;
        result.curve.push_back(p);
        fit_points.emplace_back(static_cast<double>(n), p.mean_error);
    }
    if (fit_points.size() >= 2) {
        const bool positive =
            std::all_of(fit_points.begin(), fit_points.end(), [](const auto& p) { return p.second > 0.0; });
        if (positive) result.fit = fit_power_law(fit_points);
    }
    return result;
}

}  // namespace kedmd
