#pragma once

#include "biphoton/field.hpp"

#include <string>
#include <variant>

namespace biphoton {

/// Least-squares fit of A * exp(-(x - x0)^2 / (2 sigma^2)) + B.
struct GaussianFit {
    double amplitude = 0.0;
    double center = 0.0;
    double sigma = 0.0;
    double offset = 0.0;
    double rms_residual = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string diagnostic;

    double evaluate(double x) const;
};

struct FedorovResult {
    double width_unconditional = 0.0;
    double width_conditional = 0.0;
    double ratio = 0.0;
    double fixed_coordinate = 0.0;
    GaussianFit unconditional_fit;
    GaussianFit conditional_fit;
};

struct AtMarginalPeak {};
struct AtCoordinate {
    double value = 0.0;
};
using Fixing = std::variant<AtMarginalPeak, AtCoordinate>;

/// P(x) = sum_other |Phi|^2 * d_other along the chosen arm.
Distribution1D marginal(const TwoPhotonAmplitude& tpa, Arm arm);

/// |Phi(., x_fixed)|^2 along `arm`, averaged over the columns of the other
/// arm whose coordinate lies in [fixed - w/2, fixed + w/2] (the nearest
/// column when the window holds none), renormalized to unit integral.
Distribution1D conditional(const TwoPhotonAmplitude& tpa, Arm arm, double fixed_value,
                           double slit_width);

/// Box average of the weights over a scanning slit of the given width.
/// Identity when the slit is narrower than one sample.
Distribution1D detect_through_slit(const Distribution1D& dist, double slit_width);

/// Damped Gauss-Newton fit started from the sample moments of the
/// background-subtracted data. Stops when the relative parameter change drops
/// below 1e-8; after 200 iterations `converged` stays false.
GaussianFit fit_gaussian(const Distribution1D& dist);

/// Ratio of the fitted widths of the unconditional and conditional
/// distributions of `arm`. The conditioning slit sits on the other arm, by
/// default at the peak of that arm's marginal. A nonzero `slit_width` also
/// averages both distributions over the scanning slit.
/// Throws MeasurementError when either fit fails.
FedorovResult fedorov_ratio(const TwoPhotonAmplitude& tpa, Arm arm, double slit_width,
                            const Fixing& fixing = AtMarginalPeak{});

struct EprWitness {
    double delta_x = 0.0;  // m
    double delta_p = 0.0;  // rad/m
    double product = 0.0;
    bool violated = false;
};

/// Conditional position and momentum widths of the source amplitude; the
/// separability bound is delta_x * delta_p >= 1/2 in (m, rad/m). A violation
/// is reported only below 1/2 by more than a relative 1e-9.
EprWitness epr_witness(const TwoPhotonAmplitude& source);

}  // namespace biphoton
