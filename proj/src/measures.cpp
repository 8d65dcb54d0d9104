#include "biphoton/measures.hpp"

#include "biphoton/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace biphoton {

double GaussianFit::evaluate(double x) const {
    const double u = (x - center) / sigma;
    return amplitude * std::exp(-0.5 * u * u) + offset;
}

Distribution1D marginal(const TwoPhotonAmplitude& tpa, Arm arm) {
    const Eigen::MatrixXd intensity = tpa.intensity();
    Eigen::ArrayXd weights;
    if (arm == Arm::Signal)
        weights = intensity.rowwise().sum().array() * tpa.idler.spacing;
    else
        weights = intensity.colwise().sum().transpose().array() * tpa.signal.spacing;
    return make_distribution(tpa.axis(arm), std::move(weights));
}

Distribution1D conditional(const TwoPhotonAmplitude& tpa, Arm arm, double fixed_value,
                           double slit_width) {
    if (!(slit_width >= 0.0) || !std::isfinite(slit_width))
        throw ConfigurationError("slit width must be finite and >= 0");
    const Axis& fixed_axis = tpa.axis(other(arm));
    if (!fixed_axis.contains(fixed_value))
        throw PreconditionError("conditioning coordinate " + std::to_string(fixed_value) +
                                " lies outside the " + to_string(other(arm)) + " grid");

    const double half = 0.5 * slit_width + 1e-9 * fixed_axis.spacing;
    std::vector<int> columns;
    for (int l = 0; l < fixed_axis.n; ++l)
        if (std::abs(fixed_axis.coordinate(l) - fixed_value) <= half) columns.push_back(l);
    if (columns.empty()) columns.push_back(fixed_axis.nearest_index(fixed_value));

    const Axis& axis = tpa.axis(arm);
    Eigen::ArrayXd weights = Eigen::ArrayXd::Zero(axis.n);
    for (int l : columns) {
        if (arm == Arm::Signal)
            weights += tpa.values.col(l).cwiseAbs2().array();
        else
            weights += tpa.values.row(l).transpose().cwiseAbs2().array();
    }
    Distribution1D dist = make_distribution(axis, weights / static_cast<double>(columns.size()));
    dist.weights /= dist.integral();
    return dist;
}

Distribution1D detect_through_slit(const Distribution1D& dist, double slit_width) {
    if (!(slit_width >= 0.0) || !std::isfinite(slit_width))
        throw ConfigurationError("slit width must be finite and >= 0");
    const int half = static_cast<int>(std::floor(0.5 * slit_width / dist.axis.spacing + 1e-9));
    if (half == 0) return dist;
    const int n = dist.axis.n;
    Eigen::ArrayXd prefix(n + 1);
    prefix(0) = 0.0;
    for (int j = 0; j < n; ++j) prefix(j + 1) = prefix(j) + dist.weights(j);
    Eigen::ArrayXd out(n);
    for (int j = 0; j < n; ++j) {
        const int lo = std::max(0, j - half);
        const int hi = std::min(n - 1, j + half);
        out(j) = (prefix(hi + 1) - prefix(lo)) / (hi - lo + 1);
    }
    return Distribution1D{dist.axis, out.cwiseMax(0.0)};
}

GaussianFit fit_gaussian(const Distribution1D& dist) {
    constexpr int kMaxIterations = 200;
    constexpr double kTolerance = 1e-8;

    GaussianFit fit;
    const Eigen::ArrayXd x = dist.axis.coordinates();
    const double peak = dist.weights.maxCoeff();
    if (dist.weights.size() < 8 || !(peak > 0.0)) {
        fit.diagnostic = "fewer than 8 samples or no positive weight";
        return fit;
    }
    // Work in units of the peak height and of the moment width.
    const Eigen::ArrayXd y = dist.weights / peak;
    const double floor = y.minCoeff();
    const Eigen::ArrayXd w = y - floor;
    const double total = w.sum();
    if (!(total > 0.0) || w.maxCoeff() <= 1e-14) {
        fit.diagnostic = "flat distribution, no peak to fit";
        return fit;
    }
    const double mean = (w * x).sum() / total;
    const double sd = std::sqrt((w * (x - mean).square()).sum() / total);
    if (!(sd > 0.0)) {
        fit.diagnostic = "zero moment width";
        return fit;
    }
    const Eigen::ArrayXd u = (x - mean) / sd;

    // theta = (A, u0, s, B)
    Eigen::Vector4d theta(1.0 - floor, 0.0, 1.0, floor);
    auto residuals = [&](const Eigen::Vector4d& t) -> Eigen::ArrayXd {
        const Eigen::ArrayXd d = (u - t(1)) / t(2);
        return t(0) * (-0.5 * d.square()).exp() + t(3) - y;
    };
    Eigen::ArrayXd r = residuals(theta);
    double sse = r.square().sum();
    double damping = 1e-3;

    int iteration = 0;
    for (; iteration < kMaxIterations; ++iteration) {
        const Eigen::ArrayXd d = (u - theta(1)) / theta(2);
        const Eigen::ArrayXd e = (-0.5 * d.square()).exp();
        Eigen::MatrixXd jac(u.size(), 4);
        jac.col(0) = e.matrix();
        jac.col(1) = (theta(0) * e * d / theta(2)).matrix();
        jac.col(2) = (theta(0) * e * d.square() / theta(2)).matrix();
        jac.col(3).setOnes();
        const Eigen::Matrix4d jtj = jac.transpose() * jac;
        const Eigen::Vector4d gradient = jac.transpose() * r.matrix();

        Eigen::Matrix4d lhs = jtj;
        lhs.diagonal() += damping * jtj.diagonal().cwiseMax(1e-12);
        const Eigen::Vector4d step = lhs.ldlt().solve(-gradient);
        const Eigen::Vector4d trial = theta + step;
        const Eigen::ArrayXd trial_r = residuals(trial);
        const double trial_sse = trial_r.square().sum();

        if (std::isfinite(trial_sse) && trial_sse <= sse) {
            // Changes are measured against the peak height and the width.
            const double scale_a = std::max(std::abs(trial(0)), 1e-300);
            const double scale_s = std::max(std::abs(trial(2)), 1e-300);
            const double change = std::max({std::abs(step(0)) / scale_a, std::abs(step(1)) / scale_s,
                                            std::abs(step(2)) / scale_s, std::abs(step(3)) / scale_a});
            theta = trial;
            r = trial_r;
            sse = trial_sse;
            damping = std::max(damping * 0.3, 1e-15);
            if (change < kTolerance) {
                fit.converged = true;
                ++iteration;
                break;
            }
        } else {
            damping *= 10.0;
            if (damping > 1e12) {
                // No descent direction left: theta is a stationary point.
                fit.converged = true;
                ++iteration;
                break;
            }
        }
    }

    fit.iterations = iteration;
    fit.amplitude = theta(0) * peak;
    fit.center = mean + theta(1) * sd;
    fit.sigma = std::abs(theta(2)) * sd;
    fit.offset = theta(3) * peak;
    fit.rms_residual = std::sqrt(sse / static_cast<double>(u.size())) * peak;
    if (!fit.converged) {
        fit.diagnostic = "no convergence after " + std::to_string(kMaxIterations) + " iterations";
    } else if (!(fit.amplitude > 0.0) || !(fit.sigma > 0.0) || !std::isfinite(fit.sigma)) {
        fit.converged = false;
        fit.diagnostic = "fit collapsed to a non-peaked solution";
    }
    return fit;
}

namespace {

int peak_index(const Distribution1D& dist) {
    Eigen::Index idx = 0;
    dist.weights.maxCoeff(&idx);
    return static_cast<int>(idx);
}

GaussianFit fit_or_throw(const Distribution1D& dist, const char* what) {
    GaussianFit fit = fit_gaussian(dist);
    if (!fit.converged)
        throw MeasurementError(std::string("Gaussian fit of the ") + what +
                               " distribution failed: " + fit.diagnostic);
    return fit;
}

}  // namespace

FedorovResult fedorov_ratio(const TwoPhotonAmplitude& tpa, Arm arm, double slit_width,
                            const Fixing& fixing) {
    double fixed = 0.0;
    if (const auto* at = std::get_if<AtCoordinate>(&fixing)) {
        fixed = at->value;
    } else {
        const Distribution1D partner = detect_through_slit(marginal(tpa, other(arm)), slit_width);
        fixed = partner.axis.coordinate(peak_index(partner));
    }

    FedorovResult result;
    result.fixed_coordinate = fixed;
    result.unconditional_fit =
        fit_or_throw(detect_through_slit(marginal(tpa, arm), slit_width), "unconditional");
    result.conditional_fit =
        fit_or_throw(detect_through_slit(conditional(tpa, arm, fixed, slit_width), slit_width),
                     "conditional");
    result.width_unconditional = result.unconditional_fit.sigma;
    result.width_conditional = result.conditional_fit.sigma;
    result.ratio = result.width_unconditional / result.width_conditional;
    return result;
}

// Relative margin below 1/2 required before reporting a violation; keeps a
// Heisenberg-limited state that lands one ulp under the bound from flipping.
constexpr double kWitnessFloor = 1e-9;

EprWitness epr_witness(const TwoPhotonAmplitude& source) {
    if (source.z_label != 0.0)
        throw PreconditionError("the EPR witness is defined for the source amplitude (z_label = 0)");
    const TwoPhotonAmplitude position = in_domain(source, Domain::Position);
    const TwoPhotonAmplitude momentum = in_domain(source, Domain::Momentum);

    auto conditional_width = [](const TwoPhotonAmplitude& tpa, const char* what) {
        const Distribution1D partner = marginal(tpa, Arm::Idler);
        const double fixed = partner.axis.coordinate(peak_index(partner));
        return fit_or_throw(conditional(tpa, Arm::Signal, fixed, 0.0), what).sigma;
    };

    EprWitness w;
    w.delta_x = conditional_width(position, "conditional position");
    w.delta_p = conditional_width(momentum, "conditional momentum");
    w.product = w.delta_x * w.delta_p;
    w.violated = w.product < 0.5 * (1.0 - kWitnessFloor);
    return w;
}

}  // namespace biphoton
