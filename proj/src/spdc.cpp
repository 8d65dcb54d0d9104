#include "biphoton/spdc.hpp"

#include "biphoton/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace biphoton {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sinc(double u) { return u == 0.0 ? 1.0 : std::sin(u) / u; }

void require_momentum_grid(const Axis& axis) {
    validate(axis);
    if (axis.domain != Domain::Momentum)
        throw PreconditionError("source amplitudes are built on a momentum axis");
    if (!axis.is_centered()) throw PreconditionError("source axis must be centered at 0");
}

// Sample 0 sits at -n/2 * spacing, whose mirror image +n/2 * spacing is the
// same point of the periodic grid. Averaging f over both representatives
// there keeps the tabulated amplitude exactly symmetric under the index
// reversal j -> (n - j) mod n used for parity and inversion.
template <typename F>
Eigen::MatrixXcd tabulate(const Axis& axis, F&& f) {
    const Eigen::ArrayXd p = axis.coordinates();
    const double edge = axis.max_abs();
    Eigen::MatrixXcd values(axis.n, axis.n);
    for (int j = 0; j < axis.n; ++j) {
        for (int i = 0; i < axis.n; ++i) {
            if (i != 0 && j != 0) {
                values(i, j) = f(p(i), p(j));
                continue;
            }
            const double ps[2] = {i == 0 ? -edge : p(i), i == 0 ? edge : p(i)};
            const double qs[2] = {j == 0 ? -edge : p(j), j == 0 ? edge : p(j)};
            std::complex<double> sum = 0.0;
            for (double pp : ps)
                for (double qq : qs) sum += f(pp, qq);
            values(i, j) = 0.25 * sum;
        }
    }
    return values;
}

}  // namespace

double SpdcParams::pump_wavenumber() const { return kTwoPi / lambda_pump; }

double SpdcParams::sinc_first_zero() const {
    return std::sqrt(4.0 * std::numbers::pi * pump_wavenumber() / crystal_length);
}

void SpdcParams::validate() const {
    if (!(lambda_pump > 0.0) || !(crystal_length > 0.0) || !(pump_waist > 0.0))
        throw ConfigurationError("SPDC parameters must be strictly positive");
}

void DoubleGaussianParams::validate() const {
    if (!(sigma_plus > 0.0) || !(sigma_minus > 0.0))
        throw ConfigurationError("double-Gaussian widths must be strictly positive");
}

double default_photon_wavenumber() { return kTwoPi / 808e-9; }

Axis default_momentum_axis(const SpdcParams& params, int n, double halfwidth_factor) {
    params.validate();
    if (!(halfwidth_factor > 0.0)) throw ConfigurationError("halfwidth factor must be positive");
    const double half = halfwidth_factor * std::max(params.sinc_first_zero(), 4.0 / params.pump_waist);
    return Axis::centered(n, 2.0 * half / n, Domain::Momentum);
}

Axis default_momentum_axis(const DoubleGaussianParams& params, int n, double halfwidth_factor) {
    params.validate();
    if (!(halfwidth_factor > 0.0)) throw ConfigurationError("halfwidth factor must be positive");
    const double half = halfwidth_factor * std::max(params.sigma_plus, params.sigma_minus);
    return Axis::centered(n, 2.0 * half / n, Domain::Momentum);
}

TwoPhotonAmplitude build_spdc(const SpdcParams& params, const Axis& axis) {
    params.validate();
    require_momentum_grid(axis);

    const double w0 = params.pump_waist;
    const double kp = params.pump_wavenumber();
    const double zero = params.sinc_first_zero();
    const double pump_width = 1.0 / w0;  // rms of the pump factor in |p + q|
    if (axis.max_abs() < std::max(zero, 4.0 * pump_width))
        throw ConfigurationError("momentum grid too narrow for the SPDC amplitude: half-extent " +
                                 std::to_string(axis.max_abs()) + " rad/m, need " +
                                 std::to_string(std::max(zero, 4.0 * pump_width)));
    if (axis.spacing > pump_width || axis.spacing > zero / 8.0)
        throw ConfigurationError("momentum grid too coarse for the SPDC amplitude: spacing " +
                                 std::to_string(axis.spacing) + " rad/m");

    const double a = params.crystal_length / (4.0 * kp);
    Eigen::MatrixXcd values = tabulate(axis, [&](double p, double q) {
        const double sum = p + q;
        const double diff = p - q;
        return std::complex<double>(std::exp(-0.25 * w0 * w0 * sum * sum) * sinc(a * diff * diff), 0.0);
    });
    const double k = params.photon_wavenumber();
    return normalize(make_amplitude(std::move(values), axis, axis, k, k, 0.0));
}

TwoPhotonAmplitude build_double_gaussian(const DoubleGaussianParams& params, const Axis& axis,
                                         double photon_wavenumber) {
    params.validate();
    require_momentum_grid(axis);

    const double widest = std::max(params.sigma_plus, params.sigma_minus);
    const double narrowest = std::min(params.sigma_plus, params.sigma_minus);
    if (axis.max_abs() < 3.0 * widest)
        throw ConfigurationError("momentum grid too narrow for the double-Gaussian amplitude");
    if (axis.spacing > 0.5 * narrowest)
        throw ConfigurationError("momentum grid too coarse for the double-Gaussian amplitude");

    const double cp = 0.25 / (params.sigma_plus * params.sigma_plus);
    const double cm = 0.25 / (params.sigma_minus * params.sigma_minus);
    Eigen::MatrixXcd values = tabulate(axis, [&](double p, double q) {
        const double sum = p + q;
        const double diff = p - q;
        return std::complex<double>(std::exp(-cp * sum * sum - cm * diff * diff), 0.0);
    });
    return normalize(make_amplitude(std::move(values), axis, axis, photon_wavenumber,
                                    photon_wavenumber, 0.0));
}

double double_gaussian_schmidt_number(const DoubleGaussianParams& params) {
    params.validate();
    const double sp = params.sigma_plus;
    const double sm = params.sigma_minus;
    return (sp * sp + sm * sm) / (2.0 * sp * sm);
}

}  // namespace biphoton
