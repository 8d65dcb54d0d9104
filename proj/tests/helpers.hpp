#pragma once

#include "biphoton/field.hpp"
#include "biphoton/scenario.hpp"
#include "biphoton/spdc.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

namespace testing {

using namespace biphoton;
using cd = std::complex<double>;

inline double k808() { return default_photon_wavenumber(); }

// exp(-x_s^2/ws^2) exp(-x_i^2/wi^2) on a centered position grid, normalized.
inline TwoPhotonAmplitude gaussian_product(int n, double dx, double ws, double wi = 0.0) {
    if (wi == 0.0) wi = ws;
    const Axis ax = Axis::centered(n, dx, Domain::Position);
    auto m = oracle::sample(ax, ax, [&](double a, double b) {
        return cd(std::exp(-a * a / (ws * ws) - b * b / (wi * wi)), 0.0);
    });
    return normalize(make_amplitude(m, ax, ax, k808(), k808()));
}

inline TwoPhotonAmplitude random_state(int n, std::uint64_t seed, bool exchange = false,
                                       double dx = 1e-5, double smooth = 0.0) {
    std::mt19937_64 rng(seed);
    const Axis ax = Axis::centered(n, dx, Domain::Position);
    return normalize(make_amplitude(oracle::random_symmetric(n, rng, exchange, smooth), ax, ax, k808(), k808()));
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// max |a - b| relative to max |b|.
inline double rel_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return max_abs_diff(a, b) / b.cwiseAbs().maxCoeff();
}

// Source of the default laboratory scenario in the position representation.
inline const TwoPhotonAmplitude& lab_source() {
    static const TwoPhotonAmplitude s = to_position(build_source(Scenario{}));
    return s;
}

// 1 - |<a, b>| / (|a| |b|) on the grid, insensitive to a global phase.
inline double overlap_defect(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    return 1.0 - std::abs(a.dot(b)) / (a.norm() * b.norm());
}

}  // namespace testing
