#include "kedmd/dynamics.hpp"

#include "kedmd/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace kedmd {

Eigen::VectorXd StochasticSystem::step(const Eigen::VectorXd& x, RandomStream& rng) const {
    check_dim(x);
    return step(x, draw_noise(rng));
}

void StochasticSystem::check_dim(const Eigen::VectorXd& x) const {
    if (x.size() != dim()) {
        throw InputError(fmt::format("{} system expects a state of dimension {}, got {}", name(), dim(), x.size()));
    }
}

namespace {

Eigen::VectorXd gaussian(Eigen::Index n, RandomStream& rng) {
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) w(i) = rng.normal();
    return w;
}

void check_sigma(double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw InputError(fmt::format("noise scale sigma must be nonnegative and finite, got {}", sigma));
    }
}

}  // namespace

// ---- linear ----

LinearSystem::LinearSystem(double alpha, double sigma) : alpha_(alpha), sigma_(sigma) {
    check_sigma(sigma);
    Eigen::Matrix3d perturbation;
    perturbation << 0.01, 0.04, 0.0,
                    0.01, 0.02, alpha,
                    0.0,  0.4,  0.02;
    A_ = Eigen::Matrix3d::Identity() + perturbation;
}

Eigen::VectorXd LinearSystem::draw_noise(RandomStream& rng) const { return gaussian(3, rng); }

Eigen::VectorXd LinearSystem::step(const Eigen::VectorXd& x, const Eigen::VectorXd& noise) const {
    check_dim(x);
    return A_ * x + sigma_ * noise;
}

Eigen::VectorXd LinearSystem::sample_state(RandomStream& rng) const { return gaussian(3, rng); }

// ---- SIR ----

SIRSystem::SIRSystem(double beta, double gamma, double sigma) : beta_(beta), gamma_(gamma), sigma_(sigma) {
    check_sigma(sigma);
}

Eigen::VectorXd SIRSystem::draw_noise(RandomStream& rng) const { return gaussian(3, rng); }

Eigen::VectorXd SIRSystem::step(const Eigen::VectorXd& x, const Eigen::VectorXd& noise) const {
    check_dim(x);
    const double s = x(0), i = x(1), r = x(2);
    const double infections = beta_ * s * i;
    const double recoveries = gamma_ * i;
    Eigen::VectorXd next(3);
    next << s - infections, i + infections - recoveries, r + recoveries;
    return next + sigma_ * noise;
}

Eigen::VectorXd SIRSystem::sample_state(RandomStream& rng) const {
    // Dirichlet(1,1,1): normalized unit exponentials.
    Eigen::VectorXd g(3);
    for (int k = 0; k < 3; ++k) g(k) = rng.exponential();
    return g / g.sum();
}

// ---- multiplicative ----

Eigen::VectorXd MultiplicativeNoiseSystem::draw_noise(RandomStream& rng) const {
    return Eigen::VectorXd::Constant(1, rng.uniform_open());
}

Eigen::VectorXd MultiplicativeNoiseSystem::step(const Eigen::VectorXd& x, const Eigen::VectorXd& noise) const {
    check_dim(x);
    return x * noise(0);
}

Eigen::VectorXd MultiplicativeNoiseSystem::sample_state(RandomStream& rng) const {
    return Eigen::VectorXd::Constant(1, rng.uniform_open());
}

// ---- identity ----

IdentitySystem::IdentitySystem(Eigen::Index dim) : dim_(dim) {
    if (dim < 1) throw InputError("identity system needs dimension >= 1");
}

Eigen::VectorXd IdentitySystem::draw_noise(RandomStream&) const { return Eigen::VectorXd(0); }

Eigen::VectorXd IdentitySystem::step(const Eigen::VectorXd& x, const Eigen::VectorXd&) const {
    check_dim(x);
    return x;
}

Eigen::VectorXd IdentitySystem::sample_state(RandomStream& rng) const {
    Eigen::VectorXd x(dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) x(i) = rng.uniform_open();
    return x;
}

// ----

DataSet sample_pairs(const StochasticSystem& system, Eigen::Index n, RandomStream& rng) {
    if (n < 1) throw InputError(fmt::format("sample_pairs needs N >= 1, got {}", n));
    DataSet data{Eigen::MatrixXd(system.dim(), n), Eigen::MatrixXd(system.dim(), n)};
    for (Eigen::Index i = 0; i < n; ++i) data.X.col(i) = system.sample_state(rng);
    for (Eigen::Index i = 0; i < n; ++i) data.Xplus.col(i) = system.step(Eigen::VectorXd(data.X.col(i)), rng);
    return data;
}

}  // namespace kedmd
