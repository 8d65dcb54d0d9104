#pragma once

#include "biphoton/field.hpp"

namespace biphoton {

/// Degenerate type-I source: the pump of wavelength `lambda_pump` is focused
/// to a waist `pump_waist` (1/e^2 intensity radius) inside a crystal of
/// length `crystal_length`. Signal and idler are at 2 * lambda_pump.
struct SpdcParams {
    double lambda_pump = 404e-9;
    double crystal_length = 2e-3;
    double pump_waist = 245e-6;

    double pump_wavenumber() const;
    double photon_wavenumber() const { return 0.5 * pump_wavenumber(); }
    /// |p - q| of the first zero of the phase-matching sinc.
    double sinc_first_zero() const;
    void validate() const;
};

/// Gaussian benchmark: independent Gaussians in p + q and p - q.
struct DoubleGaussianParams {
    double sigma_plus = 0.0;   // rad/m
    double sigma_minus = 0.0;  // rad/m

    void validate() const;
};

/// Wavenumber of an 808 nm photon.
double default_photon_wavenumber();

/// Momentum grid of n samples with half-extent
/// halfwidth_factor * max(sinc_first_zero, 4 / w0).
Axis default_momentum_axis(const SpdcParams& params, int n = 1024, double halfwidth_factor = 4.0);

/// Momentum grid with half-extent halfwidth_factor * max(sigma_plus, sigma_minus).
Axis default_momentum_axis(const DoubleGaussianParams& params, int n = 1024,
                           double halfwidth_factor = 4.0);

/// Normalized Phi(p,q) ~ exp(-w0^2 (p+q)^2 / 4) * sinc(L (p-q)^2 / (4 k_p)).
TwoPhotonAmplitude build_spdc(const SpdcParams& params, const Axis& momentum_axis);

/// Normalized Phi(p,q) ~ exp(-(p+q)^2 / (4 s+^2)) * exp(-(p-q)^2 / (4 s-^2)).
TwoPhotonAmplitude build_double_gaussian(const DoubleGaussianParams& params,
                                         const Axis& momentum_axis,
                                         double photon_wavenumber = default_photon_wavenumber());

/// Closed-form Schmidt number of the double-Gaussian state,
/// (s+^2 + s-^2) / (2 s+ s-). Equal to its Fedorov ratio.
double double_gaussian_schmidt_number(const DoubleGaussianParams& params);

}  // namespace biphoton
