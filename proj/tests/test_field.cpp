#include "helpers.hpp"

#include "biphoton/errors.hpp"

#include <doctest.h>

using namespace testing;

TEST_SUITE("field") {

TEST_CASE("axis samples and mirror") {
    const Axis ax = Axis::centered(16, 0.5, Domain::Position);
    CHECK(ax.coordinate(8) == 0.0);
    CHECK(ax.coordinate(0) == -4.0);
    CHECK(ax.upper() == 3.5);
    CHECK(ax.max_abs() == 4.0);
    for (int j = 1; j < 16; ++j) CHECK(ax.coordinate(ax.mirror_index(j)) == -ax.coordinate(j));
    CHECK(ax.mirror_index(0) == 0);
    CHECK(ax.nearest_index(1.26) == 11);
    CHECK(ax.nearest_index(1e9) == 15);
    CHECK(ax.contains(3.7));
    CHECK_FALSE(ax.contains(3.8));
}

TEST_CASE("axis validation") {
    CHECK_THROWS_AS(Axis::centered(8, 1.0, Domain::Position), ConfigurationError);
    CHECK_THROWS_AS(Axis::centered(48, 1.0, Domain::Position), ConfigurationError);
    CHECK_THROWS_AS(Axis::centered(16, 0.0, Domain::Position), ConfigurationError);
    CHECK_THROWS_AS(Axis::centered(16, -1.0, Domain::Position), ConfigurationError);
    Axis shifted = Axis::centered(16, 1.0, Domain::Position);
    shifted.center = 0.3;
    CHECK_THROWS_AS(shifted.conjugate(), PreconditionError);
}

TEST_CASE("grid conjugacy is exact") {
    for (int n : {16, 64, 1024}) {
        const Axis x = Axis::centered(n, 3.7e-6, Domain::Position);
        const Axis p = x.conjugate();
        CHECK(p.domain == Domain::Momentum);
        CHECK(p.spacing * x.spacing * n == doctest::Approx(2.0 * oracle::kPi).epsilon(1e-15));
        CHECK(p.conjugate().spacing == doctest::Approx(x.spacing).epsilon(1e-15));
    }
}

TEST_CASE("to_momentum matches the direct transform sum") {
    const TwoPhotonAmplitude t = random_state(32, 11);
    const TwoPhotonAmplitude m = to_momentum(t);
    const Eigen::MatrixXcd ref = oracle::direct_dft_2d(t.values, t.signal, t.idler);
    CHECK(max_abs_diff(m.values, ref) < 1e-10 * ref.cwiseAbs().maxCoeff());
    CHECK(m.signal.spacing == doctest::Approx(t.signal.conjugate().spacing));
}

TEST_CASE("Gaussian maps to a Gaussian of width 2/w") {
    const double w = 40e-6;
    const TwoPhotonAmplitude t = gaussian_product(256, 2e-6, w);
    const TwoPhotonAmplitude m = to_momentum(t);
    auto expected = oracle::sample(m.signal, m.idler, [&](double p, double q) {
        return cd(std::exp(-p * p * w * w / 4.0 - q * q * w * w / 4.0), 0.0);
    });
    expected *= std::sqrt(1.0 / (expected.squaredNorm() * m.signal.spacing * m.idler.spacing));
    CHECK(max_abs_diff(m.values, expected) < 1e-10 * expected.cwiseAbs().maxCoeff());
}

TEST_CASE("round trip and Parseval") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const TwoPhotonAmplitude t = random_state(64, seed);
        const TwoPhotonAmplitude m = to_momentum(t);
        CHECK(std::abs(norm(m) - norm(t)) <= 1e-12 * norm(t));
        const TwoPhotonAmplitude back = to_position(m);
        CHECK(max_abs_diff(back.values, t.values) < 1e-10);
        CHECK(max_abs_diff(to_momentum(to_position(m)).values, m.values) < 1e-10);
    }
}

TEST_CASE("impulse in momentum is flat in position") {
    const Axis p = Axis::centered(64, 100.0, Domain::Momentum);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(64, 64);
    m(32, 32) = 1.0;
    const TwoPhotonAmplitude x = to_position(normalize(make_amplitude(m, p, p, k808(), k808())));
    const Eigen::MatrixXd mag = x.values.cwiseAbs();
    CHECK(mag.maxCoeff() - mag.minCoeff() < 1e-12 * mag.maxCoeff());
    m.setZero();
    m(40, 20) = 1.0;
    const TwoPhotonAmplitude y = to_position(normalize(make_amplitude(m, p, p, k808(), k808())));
    CHECK(y.values.cwiseAbs().maxCoeff() - y.values.cwiseAbs().minCoeff() < 1e-12);
}

TEST_CASE("joint parity survives the transform") {
    const TwoPhotonAmplitude t = random_state(32, 5);
    const TwoPhotonAmplitude m = to_momentum(t);
    const int n = 32;
    double worst = 0.0;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) worst = std::max(worst, std::abs(m.values(r, c) - m.values((n - r) % n, (n - c) % n)));
    CHECK(worst < 1e-12);
}

TEST_CASE("transform preconditions") {
    const TwoPhotonAmplitude t = random_state(16, 1);
    CHECK_THROWS_AS(to_position(t), PreconditionError);
    CHECK_THROWS_AS(to_momentum(to_momentum(t)), PreconditionError);
    TwoPhotonAmplitude shifted = t;
    shifted.signal.center = 1e-6;
    shifted.idler.center = 1e-6;
    CHECK_THROWS_AS(to_momentum(shifted), PreconditionError);
    CHECK(in_domain(t, Domain::Position).values == t.values);
}

TEST_CASE("make_amplitude validation") {
    const Axis x = Axis::centered(16, 1e-6, Domain::Position);
    const Axis p = Axis::centered(16, 1e3, Domain::Momentum);
    CHECK_THROWS_AS(make_amplitude(Eigen::MatrixXcd::Ones(16, 16), x, p, 1.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(make_amplitude(Eigen::MatrixXcd::Ones(16, 32), x, x, 1.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(make_amplitude(Eigen::MatrixXcd::Ones(16, 16), x, x, 0.0, 1.0), ConfigurationError);
}

TEST_CASE("normalize") {
    const TwoPhotonAmplitude t = random_state(16, 9);
    CHECK(norm(t) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rel_diff(normalize(t).values, t.values) < 1e-12);
    TwoPhotonAmplitude scaled = t;
    scaled.values *= 3.0;
    CHECK(norm(scaled) == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(rel_diff(normalize(scaled).values, t.values) < 1e-12);
    TwoPhotonAmplitude zero = t;
    zero.values.setZero();
    CHECK_THROWS_AS(normalize(zero), DegenerateInputError);
}

TEST_CASE("residual chirp") {
    TwoPhotonAmplitude t = gaussian_product(64, 1e-6, 10e-6);
    const Axis& ax = t.signal;
    // edge phase step in units of pi: 2 |kappa| x_max dx / pi
    CHECK(chirp_sampling_ratio(ax, 1e9) == doctest::Approx(2.0 * 1e9 * ax.max_abs() * ax.spacing / oracle::kPi));
    t.chirp_signal = 2e8;
    t.chirp_idler = -1e8;
    CHECK(t.has_residual_chirp());
    const TwoPhotonAmplitude m = materialize_chirp(t);
    CHECK_FALSE(m.has_residual_chirp());
    const cd expected = t.values(10, 20) * std::polar(1.0, 2e8 * std::pow(ax.coordinate(10), 2) - 1e8 * std::pow(ax.coordinate(20), 2));
    CHECK(std::abs(m.values(10, 20) - expected) < 1e-12);
    CHECK(std::abs(norm(m) - 1.0) < 1e-12);
    // the momentum picture folds the chirp in first
    CHECK(max_abs_diff(to_momentum(t).values, to_momentum(m).values) < 1e-12);

    t.chirp_signal = 1e12;
    CHECK(chirp_sampling_ratio(t.signal, t.chirp_signal) > 1.0);
    CHECK_THROWS_AS(materialize_chirp(t), SamplingError);
    CHECK_THROWS_AS(to_momentum(t), SamplingError);
}

TEST_CASE("distribution") {
    const Axis ax = Axis::centered(16, 0.25, Domain::Position);
    Eigen::ArrayXd w = Eigen::ArrayXd::Constant(16, 2.0);
    CHECK(make_distribution(ax, w).integral() == doctest::Approx(8.0));
    w(3) = -1.0;
    CHECK_THROWS_AS(make_distribution(ax, w), PreconditionError);
    CHECK_THROWS_AS(make_distribution(ax, Eigen::ArrayXd::Zero(16)), DegenerateInputError);
    CHECK_THROWS_AS(make_distribution(ax, Eigen::ArrayXd::Ones(8)), PreconditionError);
}

}
