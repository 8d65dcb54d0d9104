#include "helpers.hpp"

#include "biphoton/errors.hpp"
#include "biphoton/measures.hpp"
#include "biphoton/schmidt.hpp"

#include <doctest.h>

using namespace testing;

namespace {

const DoubleGaussianParams kDg{4e3, 1e5};

const TwoPhotonAmplitude& dg_state() {
    static const TwoPhotonAmplitude t = build_double_gaussian(kDg, default_momentum_axis(kDg, 512));
    return t;
}

// sum_n c_n f_n(x_s) g_n(x_i) on a position grid, normalized
TwoPhotonAmplitude product_sum(const std::vector<std::tuple<double, std::function<double(double)>, std::function<double(double)>>>& terms,
                               int n = 128, double dx = 2e-6) {
    const Axis ax = Axis::centered(n, dx, Domain::Position);
    auto m = oracle::sample(ax, ax, [&](double a, double b) {
        cd acc = 0.0;
        for (const auto& [c, f, g] : terms) acc += c * f(a) * g(b);
        return acc;
    });
    return normalize(make_amplitude(m, ax, ax, k808(), k808()));
}

double gauss(double x, double w) { return std::exp(-x * x / (w * w)); }

}  // namespace

TEST_SUITE("schmidt") {

TEST_CASE("product state has rank one") {
    const double w = 30e-6;
    const TwoPhotonAmplitude t = gaussian_product(128, 2e-6, w, 50e-6);
    const SchmidtDecomposition d = decompose(t);
    CHECK(d.lambdas(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.rank() == 1);
    CHECK(schmidt_number(d) == doctest::Approx(1.0).epsilon(1e-12));
    Eigen::VectorXcd factor(128);
    for (int j = 0; j < 128; ++j) factor(j) = gauss(t.signal.coordinate(j), w);
    CHECK(overlap_defect(d.modes_signal.col(0), factor) < 1e-12);
    CHECK(d.modes_signal.col(0).squaredNorm() * t.signal.spacing == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("decomposition invariants") {
    for (std::uint64_t seed : {40u, 41u}) {
        const TwoPhotonAmplitude t = random_state(64, seed);
        const SchmidtDecomposition d = decompose(t);
        CHECK(d.lambdas.sum() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK((d.lambdas.array() >= 0.0).all());
        for (Eigen::Index n = 1; n < d.lambdas.size(); ++n) CHECK(d.lambdas(n) <= d.lambdas(n - 1));
        const Eigen::MatrixXcd gs = d.modes_signal.adjoint() * d.modes_signal * t.signal.spacing;
        const Eigen::MatrixXcd gi = d.modes_idler.adjoint() * d.modes_idler * t.idler.spacing;
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d.rank(), d.rank());
        CHECK((gs - id).cwiseAbs().maxCoeff() < 1e-8);
        CHECK((gi - id).cwiseAbs().maxCoeff() < 1e-8);
        const Eigen::MatrixXcd rebuilt = d.modes_signal * d.lambdas.cwiseSqrt().asDiagonal() * d.modes_idler.transpose();
        CHECK(max_abs_diff(rebuilt, t.values) < 1e-8 * t.values.cwiseAbs().maxCoeff());
        CHECK(schmidt_coefficients(t).isApprox(d.lambdas, 1e-12));
    }
}

TEST_CASE("modes carry the residual chirp") {
    TwoPhotonAmplitude t = random_state(64, 3);
    t.chirp_signal = 3e7;
    const SchmidtDecomposition d = decompose(t);
    const Eigen::MatrixXcd rebuilt = d.modes_signal * d.lambdas.cwiseSqrt().asDiagonal() * d.modes_idler.transpose();
    CHECK(max_abs_diff(rebuilt, materialize_chirp(t).values) < 1e-8 * t.values.cwiseAbs().maxCoeff());
    CHECK(d.lambdas.isApprox(decompose(materialize_chirp(t)).lambdas, 1e-10));
}

TEST_CASE("decompose requires a normalized amplitude") {
    TwoPhotonAmplitude t = random_state(32, 3);
    t.values *= 1.01;
    CHECK_THROWS_AS(decompose(t), PreconditionError);
    CHECK_THROWS_AS(schmidt_coefficients(t), PreconditionError);
}

TEST_CASE("Schmidt number from coefficients") {
    CHECK(schmidt_number(Eigen::VectorXd::Unit(5, 0)) == 1.0);
    for (int d : {2, 7, 30}) CHECK(schmidt_number(Eigen::VectorXd::Constant(d, 1.0 / d)) == doctest::Approx(d).epsilon(1e-13));
}

TEST_CASE("purity") {
    CHECK(purity(gaussian_product(128, 2e-6, 30e-6, 12e-6)) == doctest::Approx(1.0).epsilon(1e-10));
    const double w = 20e-6;
    auto even = [&](double x) { return gauss(x, w); };
    auto odd = [&](double x) { return x / w * gauss(x, w); };
    const TwoPhotonAmplitude two = product_sum({{1.0, even, even}, {4.0, odd, odd}});
    CHECK(purity(two) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(schmidt_number(decompose(two)) == doctest::Approx(2.0).epsilon(1e-8));
    for (std::uint64_t seed : {50u, 51u, 52u}) {
        const TwoPhotonAmplitude t = random_state(16, seed);
        const double lattice = oracle::lattice_purity(t);
        CHECK(purity(t) == doctest::Approx(lattice).epsilon(1e-12));
        CHECK(1.0 / schmidt_number(decompose(t)) == doctest::Approx(lattice).epsilon(1e-10));
    }
}

TEST_CASE("purity oracle on the laboratory source") {
    const TwoPhotonAmplitude& src = lab_source();
    const double k = schmidt_number(decompose(src));
    CHECK(std::abs(1.0 / k - purity(src)) <= 1e-6 * purity(src));
    MESSAGE("source K = " << k);
}

TEST_CASE("inversion overlap of definite-parity states") {
    const double w = 20e-6;
    auto even = [&](double x) { return gauss(x, w); };
    auto odd = [&](double x) { return x / w * gauss(x, w); };
    CHECK(std::abs(g1_inverted_overlap(product_sum({{1.0, even, odd}})) - 1.0) < 1e-12);
    CHECK(std::abs(g1_inverted_overlap(product_sum({{1.0, odd, even}})) + 1.0) < 1e-12);
    TwoPhotonAmplitude t = product_sum({{1.0, even, even}});
    t.signal.center = 1e-6;
    t.idler.center = 1e-6;
    CHECK_THROWS_AS(g1_inverted_overlap(t), PreconditionError);
}

TEST_CASE("inversion overlap equals the parity-weighted spectrum") {
    for (std::uint64_t seed = 60; seed < 66; ++seed) {
        const TwoPhotonAmplitude t = random_state(32, seed, seed % 2 == 0);
        const SchmidtDecomposition d = decompose(t);
        const ParityClassification p = parity_classification(d);
        const cd g1 = g1_inverted_overlap(t);
        CHECK(std::abs(g1.imag()) < 1e-10);
        CHECK(std::abs(g1 - p.weighted_sum(d.lambdas)) < 1e-8);
    }
    const SchmidtDecomposition d = decompose(lab_source());
    CHECK(std::abs(g1_inverted_overlap(lab_source()) - parity_classification(d).weighted_sum(d.lambdas)) < 1e-8);
}

TEST_CASE("parity classification") {
    const double w = 20e-6;
    auto even = [&](double x) { return gauss(x, w); };
    auto odd = [&](double x) { return x / w * gauss(x, w); };
    const ParityClassification pe = parity_classification(decompose(product_sum({{1.0, even, even}})));
    CHECK(pe.parity[0] == 1);
    CHECK(pe.score(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(pe.ambiguous[0]);
    const ParityClassification po = parity_classification(decompose(product_sum({{1.0, odd, even}})));
    CHECK(po.parity[0] == -1);
    CHECK(po.score(0) == doctest::Approx(1.0).epsilon(1e-12));

    const ParityClassification dg = parity_classification(decompose(dg_state()));
    for (int n = 0; n < 6; ++n) {
        CHECK(dg.parity[n] == (n % 2 == 0 ? 1 : -1));
        CHECK(dg.score(n) > 0.999);
    }
    // an equal mix of an even and an odd mode has no definite parity
    SchmidtDecomposition mixed = decompose(product_sum({{1.0, even, even}}));
    for (int j = 0; j < mixed.signal_axis.n; ++j) {
        const double x = mixed.signal_axis.coordinate(j);
        mixed.modes_signal(j, 0) = (even(x) + odd(x));
    }
    mixed.modes_signal /= std::sqrt(mixed.modes_signal.squaredNorm() * mixed.signal_axis.spacing);
    CHECK(parity_classification(mixed).ambiguous[0]);
}

TEST_CASE("double-Gaussian modes are Hermite-Gauss functions") {
    const SchmidtDecomposition d = decompose(dg_state());
    const Axis& ax = d.signal_axis;
    Eigen::ArrayXd m0 = d.modes_signal.col(0).cwiseAbs2().real().array();
    const GaussianFit f = fit_gaussian(make_distribution(ax, m0));
    REQUIRE(f.converged);
    const double waist = 2.0 * f.sigma;
    for (int n = 0; n < 3; ++n) {
        Eigen::VectorXcd hg(ax.n);
        for (int j = 0; j < ax.n; ++j) hg(j) = oracle::hermite_gauss(n, ax.coordinate(j), waist);
        const double overlap = std::abs(d.modes_signal.col(n).dot(hg)) * ax.spacing;
        CHECK(overlap > 0.999);
    }
}

TEST_CASE("geometric fit") {
    Eigen::VectorXd l(12);
    for (int m = 0; m < 12; ++m) l(m) = 0.5 * std::pow(0.5, m);
    const GeometricFit g = fit_geometric(l, 10);
    CHECK(g.alpha == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(g.lambda0 == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(g.rms_residual < 1e-12);
    CHECK(g.n_modes_used == 10);
    CHECK(g.normalization_mismatch < 1e-12);
    CHECK_THROWS_AS(fit_geometric(l, 2), ConfigurationError);
    CHECK_THROWS_AS(fit_geometric(Eigen::Vector2d(0.6, 0.4), 10), DegenerateInputError);
    CHECK_THROWS_AS(fit_geometric(Eigen::Vector4d(0.1, 0.2, 0.3, 0.4), 4), DegenerateInputError);

    const Eigen::VectorXd dl = decompose(dg_state()).lambdas;
    CHECK(fit_geometric(dl, 10).rms_residual < 1e-3);
}

TEST_CASE("alternating sum against 1/K") {
    const Eigen::VectorXd dl = decompose(dg_state()).lambdas;
    const double inv_k = 1.0 / schmidt_number(dl);
    CHECK(std::abs(alternating_sum(dl) - inv_k) <= 1e-3 * inv_k);
    CHECK(alternating_sum(Eigen::Vector3d(0.5, 0.3, 0.2)) == doctest::Approx(0.4));

    const Eigen::VectorXd sl = decompose(lab_source()).lambdas;
    const double sinc_inv_k = 1.0 / schmidt_number(sl);
    const GeometricFit g = fit_geometric(sl, 10);
    MESSAGE("sinc model: alternating sum " << alternating_sum(sl) << ", 1/K " << sinc_inv_k << ", relative deviation "
            << (alternating_sum(sl) - sinc_inv_k) / sinc_inv_k << ", geometric residual " << g.rms_residual);
    CHECK(g.rms_residual >= 0.0);
}

TEST_CASE("spectrum is the same in both representations") {
    const TwoPhotonAmplitude t = random_state(64, 77);
    CHECK(schmidt_coefficients(to_momentum(t)).isApprox(schmidt_coefficients(t), 1e-10));
}

}
