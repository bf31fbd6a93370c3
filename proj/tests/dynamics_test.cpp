#include "kedmd/dynamics.hpp"
#include "kedmd/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace kedmd;

TEST_CASE("noiseless SIR step") {
    const SIRSystem sir(1.0, 0.3, 0.0);
    RandomStream rng(1);
    const Eigen::VectorXd next = sir.step(Eigen::Vector3d(0.9, 0.1, 0.0), rng);
    CHECK(next(0) == doctest::Approx(0.81).epsilon(1e-15));
    CHECK(next(1) == doctest::Approx(0.16).epsilon(1e-15));
    CHECK(next(2) == doctest::Approx(0.03).epsilon(1e-15));
}

TEST_CASE("linear system matrix and fixed point") {
    const LinearSystem lin(-0.3, 0.0);
    Eigen::Matrix3d expected;
    expected << 1.01, 0.04, 0.0,
                0.01, 1.02, -0.3,
                0.0,  0.4,  1.02;
    CHECK((lin.matrix() - expected).cwiseAbs().maxCoeff() < 1e-15);
    RandomStream rng(2);
    CHECK(lin.step(Eigen::Vector3d::Zero(), rng).norm() == 0.0);
    CHECK(LinearSystem(0.7).matrix()(1, 2) == doctest::Approx(0.7));
}

TEST_CASE("multiplicative system contracts into (0, x]") {
    const MultiplicativeNoiseSystem mult;
    RandomStream rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double next = mult.step(Eigen::VectorXd::Constant(1, 0.5), rng)(0);
        CHECK(next > 0.0);
        CHECK(next <= 0.5);
    }
    // iterating from (0, 1] never leaves (0, 1]
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::VectorXd x = Eigen::VectorXd::Constant(1, rng.uniform_open());
        for (int k = 0; k < 50; ++k) {
            x = mult.step(x, rng);
            CHECK(x(0) > 0.0);
            CHECK(x(0) <= 1.0);
        }
    }
}

TEST_CASE("step validates dimension") {
    RandomStream rng(4);
    CHECK_THROWS_AS((void)LinearSystem().step(Eigen::Vector2d::Zero(), rng), InputError);
    CHECK_THROWS_AS((void)SIRSystem().step(Eigen::VectorXd::Zero(4), rng), InputError);
    CHECK_THROWS_AS((void)MultiplicativeNoiseSystem().step(Eigen::Vector2d::Ones(), rng), InputError);
    CHECK_THROWS_AS(LinearSystem(0.0, -1.0), InputError);
}

TEST_CASE("each step consumes a fixed number of variates") {
    // Three normals (six engine words) for linear and SIR, one uniform for multiplicative,
    // independent of sigma.
    for (double sigma : {0.0, 1e-3}) {
        RandomStream a(77), b(77);
        (void)LinearSystem(-0.3, sigma).step(Eigen::Vector3d(1.0, 2.0, 3.0), a);
        for (int i = 0; i < 3; ++i) (void)b.normal();
        CHECK(a.uniform_open() == b.uniform_open());
    }
    {
        RandomStream a(78), b(78);
        (void)SIRSystem(1.0, 0.3, 0.0).step(Eigen::Vector3d(0.3, 0.3, 0.4), a);
        for (int i = 0; i < 3; ++i) (void)b.normal();
        CHECK(a.uniform_open() == b.uniform_open());
    }
    {
        RandomStream a(79), b(79);
        (void)MultiplicativeNoiseSystem().step(Eigen::VectorXd::Constant(1, 0.3), a);
        (void)b.uniform_open();
        CHECK(a.uniform_open() == b.uniform_open());
    }
}

TEST_CASE("SIR mass conservation without noise") {
    const SIRSystem sir(1.0, 0.3, 0.0);
    RandomStream rng(5);
    for (int i = 0; i < 10000; ++i) {
        const Eigen::VectorXd x = sir.sample_state(rng);
        const Eigen::VectorXd y = sir.step(x, rng);
        CHECK(std::abs(y.sum() - x.sum()) <= 1e-12);
    }
    // along a trajectory with other rates as well
    const SIRSystem fast(2.5, 0.05, 0.0);
    Eigen::VectorXd x = Eigen::Vector3d(0.99, 0.01, 0.0);
    for (int k = 0; k < 200; ++k) x = fast.step(x, rng);
    CHECK(std::abs(x.sum() - 1.0) <= 1e-12);
}

TEST_CASE("sample_pairs") {
    SUBCASE("N = 1") {
        const SIRSystem sir;
        RandomStream rng(6);
        const DataSet d = sample_pairs(sir, 1, rng);
        CHECK(d.size() == 1);
        CHECK(d.Xplus.cols() == 1);
        // replay: one state draw then one step
        RandomStream replay(6);
        const Eigen::VectorXd x = sir.sample_state(replay);
        CHECK(d.X.col(0) == x);
        CHECK(d.Xplus.col(0) == sir.step(x, replay));
    }
    SUBCASE("N < 1 is rejected") {
        RandomStream rng(6);
        CHECK_THROWS_AS(sample_pairs(LinearSystem(), 0, rng), InputError);
    }
    SUBCASE("Dirichlet(1,1,1) states live on the simplex") {
        RandomStream rng(7);
        const DataSet d = sample_pairs(SIRSystem(), 10000, rng);
        CHECK(d.X.minCoeff() >= 0.0);
        CHECK((d.X.colwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-12);
        // uniform on the simplex: each coordinate has mean 1/3
        for (int i = 0; i < 3; ++i) CHECK(std::abs(d.X.row(i).mean() - 1.0 / 3.0) < 0.02);
    }
    SUBCASE("linear sampler is standard normal") {
        RandomStream rng(8);
        const DataSet d = sample_pairs(LinearSystem(), 10000, rng);
        for (int i = 0; i < 3; ++i) {
            const double mean = d.X.row(i).mean();
            const double var = (d.X.row(i).array() - mean).square().sum() / (d.size() - 1);
            CHECK(std::abs(mean) < 0.05);
            CHECK(std::abs(var - 1.0) < 0.05);
        }
    }
    SUBCASE("a fixed seed fixes the data set bit for bit") {
        RandomStream a = RandomStream(42).child(StreamPurpose::Sampling);
        RandomStream b = RandomStream(42).child(StreamPurpose::Sampling);
        RandomStream c = RandomStream(43).child(StreamPurpose::Sampling);
        const DataSet da = sample_pairs(LinearSystem(), 64, a);
        const DataSet db = sample_pairs(LinearSystem(), 64, b);
        const DataSet dc = sample_pairs(LinearSystem(), 64, c);
        CHECK(da.X == db.X);
        CHECK(da.Xplus == db.Xplus);
        CHECK(da.X != dc.X);
    }
}

TEST_CASE("random stream splitting") {
    const RandomStream root(42);
    RandomStream a = root.child(StreamPurpose::Sampling);
    RandomStream b = root.child(StreamPurpose::TrueTrajectories);
    CHECK(a.key() != b.key());
    CHECK(root.child({5, 2}).key() == root.child(5).child(2).key());
    CHECK(root.child({5, 2}).key() != root.child({2, 5}).key());
    // children do not advance the parent
    RandomStream p(9), q(9);
    (void)p.child(1);
    CHECK(p.uniform_open() == q.uniform_open());
    for (int i = 0; i < 10000; ++i) {
        const double u = a.uniform_open();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}
