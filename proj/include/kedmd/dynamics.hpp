#pragma once

#include "kedmd/random.hpp"

#include <Eigen/Dense>

#include <memory>
#include <string>

namespace kedmd {

/// Paired snapshot matrices: column i of `Xplus` is a draw from the
/// transition law started at column i of `X`.
struct DataSet {
    Eigen::MatrixXd X;
    Eigen::MatrixXd Xplus;

    [[nodiscard]] Eigen::Index size() const noexcept { return X.cols(); }
    [[nodiscard]] Eigen::Index dim() const noexcept { return X.rows(); }
};

/// Discrete-time stochastic map x' = f(x, w) together with the sampling law
/// for training states.
///
/// `step(x, w)` is deterministic. `draw_noise` consumes exactly
/// `noise_dim()` variates from the stream, regardless of the parameters
/// (a zero noise scale still consumes its draws, so streams stay aligned).
class StochasticSystem {
public:
    virtual ~StochasticSystem() = default;

    [[nodiscard]] virtual std::string name() const = 0;
    [[nodiscard]] virtual Eigen::Index dim() const noexcept = 0;
    [[nodiscard]] virtual Eigen::Index noise_dim() const noexcept = 0;

    [[nodiscard]] virtual Eigen::VectorXd draw_noise(RandomStream& rng) const = 0;
    [[nodiscard]] virtual Eigen::VectorXd step(const Eigen::VectorXd& x, const Eigen::VectorXd& noise) const = 0;
    [[nodiscard]] virtual Eigen::VectorXd sample_state(RandomStream& rng) const = 0;

    /// f(x, w) with w drawn from `rng`.
    [[nodiscard]] Eigen::VectorXd step(const Eigen::VectorXd& x, RandomStream& rng) const;

protected:
    void check_dim(const Eigen::VectorXd& x) const;
};

/// x' = A_alpha x + sigma * w, w ~ N(0, I_3).
///
/// A_alpha = I + [[0.01, 0.04, 0], [0.01, 0.02, alpha], [0, 0.4, 0.02]].
/// Training states are drawn from N(0, I_3). Three normal variates per step.
class LinearSystem final : public StochasticSystem {
public:
    explicit LinearSystem(double alpha = -0.3, double sigma = 1e-3);

    [[nodiscard]] std::string name() const override { return "linear"; }
    [[nodiscard]] Eigen::Index dim() const noexcept override { return 3; }
    [[nodiscard]] Eigen::Index noise_dim() const noexcept override { return 3; }
    [[nodiscard]] Eigen::VectorXd draw_noise(RandomStream& rng) const override;
    [[nodiscard]] Eigen::VectorXd step(const Eigen::VectorXd& x, const Eigen::VectorXd& noise) const override;
    [[nodiscard]] Eigen::VectorXd sample_state(RandomStream& rng) const override;
    using StochasticSystem::step;

    [[nodiscard]] const Eigen::Matrix3d& matrix() const noexcept { return A_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double sigma() const noexcept { return sigma_; }

private:
    double alpha_;
    double sigma_;
    Eigen::Matrix3d A_;
};

/// Discrete SIR model with additive Gaussian noise:
///   S' = S - beta S I,  I' = I + beta S I - gamma I,  R' = R + gamma I,
/// then + sigma * w, w ~ N(0, I_3). No clamping to the simplex.
/// Training states are Dirichlet(1, 1, 1). Three normal variates per step.
class SIRSystem final : public StochasticSystem {
public:
    explicit SIRSystem(double beta = 1.0, double gamma = 0.3, double sigma = 0.01);

    [[nodiscard]] std::string name() const override { return "sir"; }
    [[nodiscard]] Eigen::Index dim() const noexcept override { return 3; }
    [[nodiscard]] Eigen::Index noise_dim() const noexcept override { return 3; }
    [[nodiscard]] Eigen::VectorXd draw_noise(RandomStream& rng) const override;
    [[nodiscard]] Eigen::VectorXd step(const Eigen::VectorXd& x, const Eigen::VectorXd& noise) const override;
    [[nodiscard]] Eigen::VectorXd sample_state(RandomStream& rng) const override;
    using StochasticSystem::step;

    [[nodiscard]] double beta() const noexcept { return beta_; }
    [[nodiscard]] double gamma() const noexcept { return gamma_; }
    [[nodiscard]] double sigma() const noexcept { return sigma_; }

private:
    double beta_;
    double gamma_;
    double sigma_;
};

/// x' = x * eps, eps ~ Unif(0, 1). One uniform variate per step.
/// Training states are Unif(0, 1).
class MultiplicativeNoiseSystem final : public StochasticSystem {
public:
    [[nodiscard]] std::string name() const override { return "multiplicative"; }
    [[nodiscard]] Eigen::Index dim() const noexcept override { return 1; }
    [[nodiscard]] Eigen::Index noise_dim() const noexcept override { return 1; }
    [[nodiscard]] Eigen::VectorXd draw_noise(RandomStream& rng) const override;
    [[nodiscard]] Eigen::VectorXd step(const Eigen::VectorXd& x, const Eigen::VectorXd& noise) const override;
    [[nodiscard]] Eigen::VectorXd sample_state(RandomStream& rng) const override;
    using StochasticSystem::step;
};

/// x' = x. Test fixture with a known Koopman operator (the identity).
/// Training states are Unif([0,1]^dim); no variates consumed per step.
class IdentitySystem final : public StochasticSystem {
public:
    explicit IdentitySystem(Eigen::Index dim = 3);

    [[nodiscard]] std::string name() const override { return "identity"; }
    [[nodiscard]] Eigen::Index dim() const noexcept override { return dim_; }
    [[nodiscard]] Eigen::Index noise_dim() const noexcept override { return 0; }
    [[nodiscard]] Eigen::VectorXd draw_noise(RandomStream& rng) const override;
    [[nodiscard]] Eigen::VectorXd step(const Eigen::VectorXd& x, const Eigen::VectorXd& noise) const override;
    [[nodiscard]] Eigen::VectorXd sample_state(RandomStream& rng) const override;
    using StochasticSystem::step;

private:
    Eigen::Index dim_;
};

/// N training states from the system sampler and one successor for each.
/// States are drawn first (all N), then successors in column order.
DataSet sample_pairs(const StochasticSystem& system, Eigen::Index n, RandomStream& rng);

}  // namespace kedmd
