#pragma once

#include "biphoton/axis.hpp"

#include <Eigen/Core>

namespace biphoton {

/// Joint transverse amplitude of a photon pair sampled on a signal x idler
/// grid (rows: signal, columns: idler). Both axes carry the same domain tag.
///
/// In the position representation an amplitude may carry a residual
/// quadratic phase exp(i*(chirp_signal*x_s^2 + chirp_idler*x_i^2)) that is
/// kept analytically instead of being multiplied into `values`. Optical
/// chains leave such a wavefront curvature behind at planes whose grid is
/// too coarse to sample it. Intensities, Schmidt spectra and inversion
/// overlaps do not depend on it; Fourier transforms fold it into the
/// samples first and fail if it would alias.
struct TwoPhotonAmplitude {
    Eigen::MatrixXcd values;
    Axis signal;
    Axis idler;
    double k_signal = 0.0;  // rad/m
    double k_idler = 0.0;   // rad/m
    double z_label = 0.0;   // m, bookkeeping only
    double chirp_signal = 0.0;  // rad/m^2
    double chirp_idler = 0.0;   // rad/m^2

    Domain domain() const { return signal.domain; }
    const Axis& axis(Arm arm) const { return arm == Arm::Signal ? signal : idler; }
    Axis& axis(Arm arm) { return arm == Arm::Signal ? signal : idler; }
    double wavenumber(Arm arm) const { return arm == Arm::Signal ? k_signal : k_idler; }
    double chirp(Arm arm) const { return arm == Arm::Signal ? chirp_signal : chirp_idler; }
    double& chirp(Arm arm) { return arm == Arm::Signal ? chirp_signal : chirp_idler; }
    bool has_residual_chirp() const { return chirp_signal != 0.0 || chirp_idler != 0.0; }

    /// |values|^2, the two-photon intensity on the grid.
    Eigen::MatrixXd intensity() const { return values.cwiseAbs2(); }
};

/// Validating constructor: shapes match the axes, domains agree, k > 0.
TwoPhotonAmplitude make_amplitude(Eigen::MatrixXcd values, const Axis& signal, const Axis& idler,
                                  double k_signal, double k_idler, double z_label = 0.0);

void validate(const TwoPhotonAmplitude& tpa);

/// sum |Phi|^2 * ds * di
double norm(const TwoPhotonAmplitude& tpa);

/// Rescale so that norm() == 1. Throws DegenerateInputError on an all-zero amplitude.
TwoPhotonAmplitude normalize(TwoPhotonAmplitude tpa);

/// Unitary change of representation, Position -> Momentum, per coordinate
///   Phi~(p) = (2 pi)^(-1/2) * integral Phi(x) exp(-i p x) dx
/// evaluated on the conjugate grid. Any residual chirp is folded in first.
TwoPhotonAmplitude to_momentum(const TwoPhotonAmplitude& tpa);

/// Inverse of to_momentum.
TwoPhotonAmplitude to_position(const TwoPhotonAmplitude& tpa);

/// Returns the amplitude in `domain` (no-op when already there).
TwoPhotonAmplitude in_domain(const TwoPhotonAmplitude& tpa, Domain domain);

/// Multiplies the residual chirp into the samples. Throws SamplingError when
/// the phase step between adjacent samples at the grid edge reaches pi.
TwoPhotonAmplitude materialize_chirp(const TwoPhotonAmplitude& tpa);

/// Phase step between adjacent samples at the edge of `axis` for the
/// quadratic phase exp(i*chirp*x^2), in units of pi. Below 1 is resolvable.
double chirp_sampling_ratio(const Axis& axis, double chirp);

/// Nonnegative samples on an axis: marginals, conditionals, detector scans.
struct Distribution1D {
    Axis axis;
    Eigen::ArrayXd weights;

    double integral() const { return weights.sum() * axis.spacing; }
};

Distribution1D make_distribution(const Axis& axis, Eigen::ArrayXd weights);

}  // namespace biphoton
