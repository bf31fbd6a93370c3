#include "kedmd/trajectory.hpp"

#include "kedmd/errors.hpp"

#include <fmt/format.h>

#include <ostream>

namespace kedmd {

void TrajectoryConfig::validate() const {
    if (x0.size() == 0) throw InputError("trajectory initial state is empty");
    if (horizon < 0) throw InputError(fmt::format("horizon must be >= 0, got {}", horizon));
    if (n_realizations < 1) throw InputError(fmt::format("n_realizations must be >= 1, got {}", n_realizations));
    if (n_zeta < 1) throw InputError(fmt::format("n_zeta must be >= 1, got {}", n_zeta));
}

StateSequence mean_sequence(const std::vector<StateSequence>& realizations) {
    if (realizations.empty()) throw InputError("mean of an empty trajectory bundle");
    StateSequence mean = realizations.front();
    for (std::size_t r = 1; r < realizations.size(); ++r) mean += realizations[r];
    return mean / static_cast<double>(realizations.size());
}

namespace {

void check_initial_state(Eigen::Index expected, const Eigen::VectorXd& x0) {
    if (x0.size() != expected) {
        throw InputError(fmt::format("initial state has dimension {}, expected {}", x0.size(), expected));
    }
}

StateSequence simulate_one(const StochasticSystem& system, const TrajectoryConfig& cfg, RandomStream rng) {
    StateSequence seq(system.dim(), cfg.horizon + 1);
    seq.col(0) = cfg.x0;
    for (int k = 0; k < cfg.horizon; ++k) seq.col(k + 1) = system.step(Eigen::VectorXd(seq.col(k)), rng);
    return seq;
}

struct StochasticRun {
    StateSequence states;
    bool extrapolated = false;
};

StochasticRun predict_one(const KoopmanModel& model, const StochasticSystem& system, const TrajectoryConfig& cfg,
                          RandomStream rng) {
    StochasticRun run{StateSequence(model.dim(), cfg.horizon + 1)};
    LiftedState mu = model.embed(cfg.x0);
    run.states.col(0) = model.lift_back(mu);
    for (int k = 0; k < cfg.horizon; ++k) {
        const Eigen::VectorXd x = run.states.col(k);
        run.extrapolated = run.extrapolated || !model.inside_training_box(x);
        const LiftedState zeta = lifted_noise(model, system, x, cfg.n_zeta, rng);
        mu.coeffs = model.propagate_mean(mu).coeffs + zeta.coeffs;
        run.states.col(k + 1) = model.lift_back(mu);
    }
    run.extrapolated = run.extrapolated || !model.inside_training_box(run.states.col(cfg.horizon));
    return run;
}

}  // namespace

TrajectoryBundle simulate_true(const StochasticSystem& system, const TrajectoryConfig& cfg, const RandomStream& rng,
                               Execution exec) {
    cfg.validate();
    check_initial_state(system.dim(), cfg.x0);
    TrajectoryBundle bundle;
    bundle.realizations.resize(static_cast<std::size_t>(cfg.n_realizations));
    const int n = cfg.n_realizations;
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
        for (int r = 0; r < n; ++r) {
            bundle.realizations[static_cast<std::size_t>(r)] =
                simulate_one(system, cfg, rng.child(static_cast<std::uint64_t>(r)));
        }
    } else {
        for (int r = 0; r < n; ++r) {
            bundle.realizations[static_cast<std::size_t>(r)] =
                simulate_one(system, cfg, rng.child(static_cast<std::uint64_t>(r)));
        }
    }
    bundle.mean = mean_sequence(bundle.realizations);
    return bundle;
}

StateSequence predict_mean(const KoopmanModel& model, const TrajectoryConfig& cfg) {
    if (cfg.horizon < 0) throw InputError(fmt::format("horizon must be >= 0, got {}", cfg.horizon));
    check_initial_state(model.dim(), cfg.x0);
    StateSequence seq(model.dim(), cfg.horizon + 1);
    LiftedState mu = model.embed(cfg.x0);
    seq.col(0) = model.lift_back(mu);
    for (int k = 0; k < cfg.horizon; ++k) {
        mu = model.propagate_mean(mu);
        seq.col(k + 1) = model.lift_back(mu);
    }
    return seq;
}

Eigen::MatrixXd lifted_noise_draws(const KoopmanModel& model, const StochasticSystem& system,
                                   const Eigen::VectorXd& x, int n_draws, RandomStream& rng) {
    if (n_draws < 1) throw InputError(fmt::format("need at least one noise draw, got {}", n_draws));
    check_initial_state(model.dim(), x);
    Eigen::MatrixXd successors(model.dim(), n_draws);
    for (int j = 0; j < n_draws; ++j) successors.col(j) = system.step(x, rng);
    Eigen::MatrixXd draws = model.embed_many(successors);
    const Eigen::VectorXd conditional = model.propagate_mean(model.embed(x)).coeffs;
    draws.colwise() -= conditional;
    return draws;
}

LiftedState lifted_noise(const KoopmanModel& model, const StochasticSystem& system, const Eigen::VectorXd& x,
                         int n_zeta, RandomStream& rng) {
    return {lifted_noise_draws(model, system, x, n_zeta, rng).rowwise().mean()};
}

TrajectoryBundle predict_stochastic(const KoopmanModel& model, const StochasticSystem& system,
                                    const TrajectoryConfig& cfg, const RandomStream& rng, Execution exec) {
    cfg.validate();
    check_initial_state(model.dim(), cfg.x0);
    if (system.dim() != model.dim()) {
        throw InputError(fmt::format("system dimension {} does not match model dimension {}", system.dim(),
                                     model.dim()));
    }
    const int n = cfg.n_realizations;
    std::vector<StochasticRun> runs(static_cast<std::size_t>(n));
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int r = 0; r < n; ++r) {
            runs[static_cast<std::size_t>(r)] = predict_one(model, system, cfg, rng.child(static_cast<std::uint64_t>(r)));
        }
    } else {
        for (int r = 0; r < n; ++r) {
            runs[static_cast<std::size_t>(r)] = predict_one(model, system, cfg, rng.child(static_cast<std::uint64_t>(r)));
        }
    }
    TrajectoryBundle bundle;
    bundle.realizations.reserve(runs.size());
    for (auto& run : runs) {
        bundle.extrapolated = bundle.extrapolated || run.extrapolated;
        bundle.realizations.push_back(std::move(run.states));
    }
    bundle.mean = mean_sequence(bundle.realizations);
    return bundle;
}

double trajectory_error(const StateSequence& reference, const StateSequence& predicted, ErrorMetric metric) {
    if (reference.rows() != predicted.rows() || reference.cols() != predicted.cols()) {
        throw InputError(fmt::format("trajectory shapes differ: {}x{} vs {}x{}", reference.rows(), reference.cols(),
                                     predicted.rows(), predicted.cols()));
    }
    if (reference.cols() == 0) throw InputError("trajectory error of empty sequences");
    const Eigen::VectorXd distances = (reference - predicted).colwise().norm().transpose();
    return metric == ErrorMetric::MaxOverTime ? distances.maxCoeff() : distances.mean();
}

void write_bundle_csv(std::ostream& os, const TrajectoryBundle& bundle) {
    const Eigen::Index dim = bundle.mean.rows();
    os << "realization,step";
    for (Eigen::Index d = 0; d < dim; ++d) os << ",x" << d;
    os << '\n';
    auto write_rows = [&](long id, const StateSequence& seq) {
        for (Eigen::Index k = 0; k < seq.cols(); ++k) {
            os << id << ',' << k;
            for (Eigen::Index d = 0; d < dim; ++d) os << ',' << fmt::format("{}", seq(d, k));
            os << '\n';
        }
    };
    for (std::size_t r = 0; r < bundle.realizations.size(); ++r) write_rows(static_cast<long>(r), bundle.realizations[r]);
    write_rows(-1, bundle.mean);
}

}  // namespace kedmd
