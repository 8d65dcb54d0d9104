#pragma once

#include "biphoton/optics.hpp"
#include "biphoton/spdc.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace biphoton {

enum class SourceModel { Spdc, DoubleGaussian };

/// How the coincidence rates of the Schmidt measurement are integrated: over
/// the whole grid (slits oriented along x) or through a window of
/// `slit_schmidt` centered on each marginal peak.
enum class SchmidtWindow { Full, Slit };

/// Complete description of a simulated experiment. All lengths in SI.
/// Defaults reproduce the laboratory configuration: 404 nm pump focused to
/// 245 um in a 2 mm crystal, one f = 500 mm lens per arm placed so that the
/// image plane of the crystal lies 1550 mm behind it, 30 um scanning slits.
struct Scenario {
    SourceModel model = SourceModel::Spdc;
    SpdcParams spdc;
    DoubleGaussianParams double_gaussian{4.0e3, 1.0e5};

    int grid_n = 1024;
    double momentum_halfwidth_factor = 4.0;

    double lens_focal = 0.5;
    double lens_position = 0.5 * 1.55 / (1.55 - 0.5);  // crystal -> lens

    double slit_fedorov = 30e-6;
    double slit_schmidt = 200e-6;
    SchmidtWindow schmidt_window = SchmidtWindow::Full;

    double z_start = 0.45;  // detection plane, measured from the lens
    double z_stop = 1.60;
    int steps = 24;

    std::string csv_path;
    std::string summary_path;

    void validate() const;
    /// Detection planes of the sweep, z_start first; a single plane when steps == 1.
    std::vector<double> planes() const;
    double photon_wavenumber() const { return spdc.photon_wavenumber(); }
    /// Distance behind the lens at which the crystal is imaged.
    double image_plane() const;
};

/// Parses a scenario document. Length keys carry their unit as a suffix
/// (_m, _mm, _um, _nm) and exactly one variant of each key may appear;
/// unknown keys are rejected. Missing keys keep their defaults.
Scenario scenario_from_json(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

/// Fully resolved scenario (every field present, lengths in meters).
nlohmann::json to_json(const Scenario& scenario);

/// Normalized source amplitude on its momentum grid.
TwoPhotonAmplitude build_source(const Scenario& scenario);

/// Crystal -> lens -> detection plane at distance z behind the lens, both arms.
ArmChain detection_chain(const Scenario& scenario, double z);

/// Source propagated to the detection plane z (position representation).
TwoPhotonAmplitude detection_state(const Scenario& scenario, const TwoPhotonAmplitude& source,
                                   double z);

}  // namespace biphoton
