#include "kedmd/errors.hpp"
#include "kedmd/kernels.hpp"
#include "kedmd/random.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace kedmd;

namespace {

Eigen::MatrixXd random_points(Eigen::Index dim, Eigen::Index n, std::uint64_t seed, double scale = 1.0) {
    RandomStream rng(seed);
    Eigen::MatrixXd pts(dim, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) pts(i, j) = scale * rng.uniform_open();
    return pts;
}

const Smoothness kAllOrders[] = {Smoothness::Half, Smoothness::ThreeHalves, Smoothness::FiveHalves};

}  // namespace

TEST_CASE("Matérn closed forms") {
    const Eigen::Vector3d x(0.3, -1.2, 2.0);

    SUBCASE("zero distance gives 1") {
        CHECK(MaternKernel(0.5, 1.0)(x, x) == 1.0);
    }
    SUBCASE("nu = 1/2 at distance ell is 1/e") {
        for (double ell : {0.1, 1.0, 7.5, 1e3}) {
            const Eigen::Vector3d y = x + Eigen::Vector3d(0.0, ell, 0.0);
            CHECK(MaternKernel(0.5, ell)(x, y) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
        }
    }
    SUBCASE("nu = 3/2 at r = ell = 1") {
        // (1 + sqrt 3) exp(-sqrt 3), 30-digit reference
        const Eigen::Vector3d y = x + Eigen::Vector3d(1.0, 0.0, 0.0);
        CHECK(MaternKernel(1.5, 1.0)(x, y) == doctest::Approx(0.483357724596507650595).epsilon(1e-14));
    }
    SUBCASE("nu = 5/2") {
        // (1 + sqrt 5 + 5/3) exp(-sqrt 5) and the same form at r/ell = 0.35
        const Eigen::Vector3d y = x + Eigen::Vector3d(0.0, 0.0, 1.0);
        CHECK(MaternKernel(2.5, 1.0)(x, y) == doctest::Approx(0.523994108831820310592).epsilon(1e-14));
        const Eigen::Vector3d z = x + Eigen::Vector3d(0.0, 0.7, 0.0);
        CHECK(MaternKernel(2.5, 2.0)(x, z) == doctest::Approx(0.908370185498593722068).epsilon(1e-14));
    }
}

TEST_CASE("kernel argument validation") {
    CHECK_THROWS_AS(MaternKernel(1.0, 1.0), UnsupportedOrderError);
    CHECK_THROWS_AS(MaternKernel(0.5, 0.0), InputError);
    CHECK_THROWS_AS(MaternKernel(0.5, -2.0), InputError);
    const MaternKernel k(0.5, 1.0);
    CHECK_THROWS_AS((void)k(Eigen::Vector3d::Zero(), Eigen::Vector2d::Zero()), InputError);
}

TEST_CASE("kernel invariants over random pairs") {
    RandomStream rng(11);
    for (auto order : kAllOrders) {
        const MaternKernel k(order, 0.8);
        for (int trial = 0; trial < 200; ++trial) {
            Eigen::VectorXd x(4), y(4);
            for (int i = 0; i < 4; ++i) {
                x(i) = 4.0 * rng.uniform_open() - 2.0;
                y(i) = 4.0 * rng.uniform_open() - 2.0;
            }
            const double kxy = k(x, y);
            CHECK(kxy == k(y, x));
            CHECK(k(x, x) == 1.0);
            CHECK(kxy > 0.0);
            CHECK(kxy <= 1.0);

            // strictly decreasing along the ray x + t (y - x)
            const Eigen::VectorXd dir = (y - x).normalized();
            double prev = 1.0;
            for (int s = 1; s <= 20; ++s) {
                const double cur = k(x, Eigen::VectorXd(x + 0.25 * s * dir));
                CHECK(cur < prev);
                prev = cur;
            }
        }
    }
}

TEST_CASE("gram matrix") {
    const MaternKernel k(0.5, 1.0);

    SUBCASE("single point") {
        const Eigen::MatrixXd p = Eigen::Vector3d(0.2, 0.4, 0.6);
        const GramMatrix g = gram(k, p, p);
        REQUIRE(g.size() == 1);
        CHECK(g.entries(0, 0) == 1.0);
    }
    SUBCASE("duplicated point is singular") {
        Eigen::MatrixXd p(3, 2);
        p.col(0) = Eigen::Vector3d(0.2, 0.4, 0.6);
        p.col(1) = p.col(0);
        const GramMatrix g = gram(k, p, p);
        CHECK((g.entries.array() == 1.0).all());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g.entries);
        CHECK(std::abs(eig.eigenvalues()(0)) < 1e-15);
        CHECK_THROWS_AS(RegularizedSolver{g}, NumericalError);
        CHECK_NOTHROW(RegularizedSolver(GramMatrix{g.entries, 1e-8}));
    }
    SUBCASE("5 random points in the unit cube are PSD") {
        const Eigen::MatrixXd p = random_points(3, 5, 3);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram(k, p, p).entries);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
    }
    SUBCASE("empty and mismatched inputs") {
        const Eigen::MatrixXd empty(3, 0);
        const Eigen::MatrixXd p = random_points(3, 4, 1);
        CHECK_THROWS_AS(gram(k, empty, p), InputError);
        CHECK_THROWS_AS(gram(k, p, random_points(2, 4, 1)), InputError);
    }
    SUBCASE("rectangular entries match pointwise evaluation") {
        const Eigen::MatrixXd a = random_points(3, 6, 5);
        const Eigen::MatrixXd b = random_points(3, 4, 6);
        const GramMatrix g = gram(k, a, b);
        REQUIRE(g.entries.rows() == 6);
        REQUIRE(g.entries.cols() == 4);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 4; ++j) CHECK(g.entries(i, j) == k(a.col(i), b.col(j)));
    }
}

TEST_CASE("gram PSD and symmetry for every order, up to 32 points") {
    for (auto order : kAllOrders) {
        for (int n : {2, 8, 17, 32}) {
            const Eigen::MatrixXd p = random_points(3, n, static_cast<std::uint64_t>(100 + n), 2.0);
            const GramMatrix g = gram(MaternKernel(order, 0.7), p, p);
            CHECK((g.entries - g.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g.entries);
            CHECK(eig.eigenvalues().minCoeff() >= -1e-9);
        }
    }
}

TEST_CASE("parallel gram is bit-identical to the serial reference") {
    const Eigen::MatrixXd a = random_points(3, 157, 21, 3.0);
    const Eigen::MatrixXd b = random_points(3, 91, 22, 3.0);
    for (auto order : kAllOrders) {
        const MaternKernel k(order, 1.3);
        CHECK(gram(k, a, b).entries == gram_serial(k, a, b).entries);
        CHECK(gram(k, a, a).entries == gram_serial(k, a, a).entries);
    }
}

TEST_CASE("solve_regularized") {
    SUBCASE("identity") {
        const GramMatrix g{Eigen::MatrixXd::Identity(4, 4), 0.0};
        const Eigen::VectorXd b = Eigen::Vector4d(1.0, -2.0, 3.0, 0.5);
        CHECK((solve_regularized(g, b) - b).norm() == 0.0);
    }
    SUBCASE("diagonal") {
        Eigen::MatrixXd d(2, 2);
        d << 2.0, 0.0, 0.0, 4.0;
        const Eigen::MatrixXd x = solve_regularized(GramMatrix{d, 0.0}, Eigen::Vector2d(1.0, 1.0));
        CHECK(x(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(x(1, 0) == doctest::Approx(0.25).epsilon(1e-15));
    }
    SUBCASE("random 8x8 PSD with tiny ridge: residual") {
        RandomStream rng(8);
        Eigen::MatrixXd a(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) a(i, j) = rng.normal();
        const GramMatrix g{a * a.transpose(), 1e-10};
        Eigen::MatrixXd rhs(8, 3);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 3; ++j) rhs(i, j) = rng.normal();
        const Eigen::MatrixXd sol = solve_regularized(g, rhs);
        Eigen::MatrixXd shifted = g.entries;
        shifted.diagonal().array() += g.ridge;
        CHECK((shifted * sol - rhs).norm() <= 1e-8);
    }
    SUBCASE("solve after multiply is the identity on well-conditioned Gram matrices") {
        const Eigen::MatrixXd p = random_points(2, 12, 31, 4.0);
        const GramMatrix g = gram(MaternKernel(0.5, 0.5), p, p);
        RandomStream rng(9);
        Eigen::VectorXd v(12);
        for (int i = 0; i < 12; ++i) v(i) = rng.normal();
        const Eigen::VectorXd back = solve_regularized(g, Eigen::MatrixXd(g.entries * v));
        CHECK((back - v).norm() / v.norm() <= 1e-8);
    }
    SUBCASE("non-square and negative ridge are input errors") {
        CHECK_THROWS_AS(RegularizedSolver(GramMatrix{Eigen::MatrixXd::Ones(2, 3), 0.0}), InputError);
        CHECK_THROWS_AS(RegularizedSolver(GramMatrix{Eigen::MatrixXd::Identity(2, 2), -1.0}), InputError);
    }
    SUBCASE("factorization failure names the smallest pivot") {
        Eigen::MatrixXd indefinite(2, 2);
        indefinite << 1.0, 2.0, 2.0, 1.0;
        try {
            (void)RegularizedSolver(GramMatrix{indefinite, 0.0});
            FAIL("expected NumericalError");
        } catch (const NumericalError& e) {
            CHECK(std::string(e.what()).find("smallest pivot") != std::string::npos);
        }
    }
}

TEST_CASE("default ridge scales with N") {
    CHECK(default_ridge(1) == 1e-10);
    CHECK(default_ridge(800) == doctest::Approx(8e-8));
}
