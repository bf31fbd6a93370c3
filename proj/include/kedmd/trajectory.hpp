#pragma once

#include "kedmd/dynamics.hpp"
#include "kedmd/koopman.hpp"
#include "kedmd/random.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <vector>

namespace kedmd {

/// Sequence of states x_0..x_T stored as the columns of a dim x (T+1) matrix.
using StateSequence = Eigen::MatrixXd;

enum class Execution { Serial, Parallel };

struct TrajectoryConfig {
    Eigen::VectorXd x0;
    int horizon = 30;
    int n_realizations = 30;
    int n_zeta = 30;

    void validate() const;
};

struct TrajectoryBundle {
    std::vector<StateSequence> realizations;
    StateSequence mean;
    /// Set when some predicted state left the bounding box of the training states.
    bool extrapolated = false;

    [[nodiscard]] int horizon() const noexcept { return static_cast<int>(mean.cols()) - 1; }
};

/// Pointwise average over realizations, folded in index order.
StateSequence mean_sequence(const std::vector<StateSequence>& realizations);

/// Realizations of the true system from cfg.x0. Realization r draws its noise
/// from `rng.child(r)`, so the result does not depend on `exec`.
TrajectoryBundle simulate_true(const StochasticSystem& system, const TrajectoryConfig& cfg, const RandomStream& rng,
                               Execution exec = Execution::Parallel);

/// Mean trajectory: mu_0 = embed(x0), mu_{k+1} = Ustar mu_k, x_k = lift_back(mu_k).
StateSequence predict_mean(const KoopmanModel& model, const TrajectoryConfig& cfg);

/// One draw per column of the lifted one-step residual at x:
///   embed(f(x, w_j)) - propagate_mean(embed(x)).
Eigen::MatrixXd lifted_noise_draws(const KoopmanModel& model, const StochasticSystem& system,
                                   const Eigen::VectorXd& x, int n_draws, RandomStream& rng);

/// Average of `lifted_noise_draws`, the lifted noise term added at each
/// stochastic step.
LiftedState lifted_noise(const KoopmanModel& model, const StochasticSystem& system, const Eigen::VectorXd& x,
                         int n_zeta, RandomStream& rng);

/// Noise-augmented recurrence mu_{k+1} = Ustar mu_k + zeta_k with zeta_k from
/// `lifted_noise` at x_k = lift_back(mu_k). Realization r uses `rng.child(r)`.
TrajectoryBundle predict_stochastic(const KoopmanModel& model, const StochasticSystem& system,
                                    const TrajectoryConfig& cfg, const RandomStream& rng,
                                    Execution exec = Execution::Parallel);

enum class ErrorMetric { MaxOverTime, TimeAverage };

/// Distance between two sequences: max (or mean) over steps of the Euclidean
/// distance between the states at each step.
double trajectory_error(const StateSequence& reference, const StateSequence& predicted,
                        ErrorMetric metric = ErrorMetric::MaxOverTime);

/// CSV with header `realization,step,x0,...`; mean rows carry realization -1.
void write_bundle_csv(std::ostream& os, const TrajectoryBundle& bundle);

}  // namespace kedmd
