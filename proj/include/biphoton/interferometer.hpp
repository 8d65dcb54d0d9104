#pragma once

#include "biphoton/field.hpp"

#include <vector>

namespace biphoton {

/// Phi(x_s, x_i) -> Phi(-x_s, x_i) (or the idler analogue) by index reversal
/// about the center sample. Position domain only.
TwoPhotonAmplitude invert_arm(const TwoPhotonAmplitude& tpa, Arm arm);

/// Two-photon intensities behind the two outputs of the inverting
/// Mach-Zehnder in the signal arm.
struct PortIntensities {
    Eigen::MatrixXd constructive;
    Eigen::MatrixXd destructive;
    Axis signal;
    Axis idler;
    double theta = 0.0;
};

/// Ports (Phi + e^{i theta} Phi_inv) / 2 and (Phi - e^{i theta} Phi_inv) / 2.
PortIntensities interfere(const TwoPhotonAmplitude& tpa, double theta);

/// Detection window on one coordinate: a slit of given width and center, or
/// the whole grid.
struct Slit {
    bool full = true;
    double center = 0.0;
    double width = 0.0;

    static Slit whole() { return {}; }
    static Slit window(double center, double width) { return {false, center, width}; }
};

struct PortRates {
    double p_plus = 0.0;
    double p_minus = 0.0;
};

/// Integrates both port maps over the slit windows.
PortRates conditional_rates(const PortIntensities& ports, const Slit& slit_signal,
                            const Slit& slit_idler);

/// Rates in the signal arm alone (idler traced out).
PortRates single_arm_rates(const PortIntensities& ports, const Slit& slit_signal);

/// K = (P+ + P-) / (P+ - P-).
double schmidt_from_rates(double p_plus, double p_minus);

enum class Port { Constructive, Destructive };

struct PhaseScan {
    std::vector<double> thetas;
    std::vector<double> rates;
    double visibility = 0.0;
    double k_estimate = 0.0;
    bool saturated = false;  // visibility below the numeric floor; k_estimate is +inf
};

/// Interferes at every phase and records the coincidence rate at
/// `monitored` through the slits. visibility = (max - min) / (max + min).
PhaseScan phase_scan(const TwoPhotonAmplitude& tpa, const std::vector<double>& thetas,
                     const Slit& slit_signal, const Slit& slit_idler,
                     Port monitored = Port::Constructive);

}  // namespace biphoton
