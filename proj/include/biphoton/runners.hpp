#pragma once

#include "biphoton/interferometer.hpp"
#include "biphoton/measures.hpp"
#include "biphoton/scenario.hpp"
#include "biphoton/schmidt.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace biphoton {

/// Worker threads for sweeps: BIPHOTON_WORKERS if set, else the hardware concurrency.
int worker_count();

/// Runs job(i) for i in [0, count) on `workers` threads. Each index is run
/// exactly once; results must be written to per-index storage.
void parallel_for(int count, int workers, const std::function<void(int)>& job);

struct FedorovRow {
    double z = 0.0;
    std::optional<FedorovResult> result;
    std::string error;
};

std::vector<FedorovRow> run_fedorov_scan(const Scenario& scenario, int workers = 0);

struct SchmidtRow {
    double z = 0.0;
    std::optional<double> k_svd;
    std::optional<double> k_visibility;
    std::optional<double> p_plus;
    std::optional<double> p_minus;
    std::optional<double> geometric_alpha;
    std::vector<std::string> errors;
};

/// Rate windows used by the Schmidt measurement at one plane.
std::pair<Slit, Slit> schmidt_windows(const Scenario& scenario, const TwoPhotonAmplitude& state);

std::vector<SchmidtRow> run_schmidt_scan(const Scenario& scenario, int workers = 0);

struct ModesResult {
    Axis axis;
    Eigen::MatrixXcd modes;  // first n columns of the signal modes, phase-fixed
    Eigen::VectorXd lambdas;  // full spectrum
    ParityClassification parity;
    int requested = 0;
    std::vector<std::string> warnings;
};

/// Schmidt modes of the source in the position representation. Each mode is
/// rotated so that its largest sample is real and positive.
ModesResult run_modes(const Scenario& scenario, int n_modes);

struct PhaseScanResult {
    double z = 0.0;
    PhaseScan scan;
};

/// Evenly spaced phases theta_j = 2 pi j / n. Requires n >= 3.
std::vector<double> scan_phases(int n_thetas);

PhaseScanResult run_phase_scan(const Scenario& scenario, double z, const std::vector<double>& thetas);

struct AmplitudeDump {
    double z = 0.0;
    Domain domain = Domain::Position;
    Eigen::ArrayXd signal_coordinates;
    Eigen::ArrayXd idler_coordinates;
    Eigen::MatrixXd intensity;  // decimated to <= 256 x 256
    int stride = 1;
    double correlation = 0.0;   // Pearson coefficient of x_s, x_i under |Phi|^2
};

/// Pearson correlation of the two coordinates weighted by |Phi|^2.
double intensity_correlation(const TwoPhotonAmplitude& tpa);

AmplitudeDump run_amplitude_dump(const Scenario& scenario, double z, Domain domain);

/// 9 significant digits; "null" for missing values.
std::string format_number(double value);
std::string format_number(const std::optional<double>& value);

void write_fedorov_csv(std::ostream& out, const std::vector<FedorovRow>& rows);
void write_schmidt_csv(std::ostream& out, const std::vector<SchmidtRow>& rows);
void write_modes_csv(std::ostream& out, const ModesResult& result);
void write_eigenvalues_csv(std::ostream& out, const ModesResult& result);
void write_phase_scan_csv(std::ostream& out, const PhaseScanResult& result);
void write_amplitude_csv(std::ostream& out, const AmplitudeDump& dump);

}  // namespace biphoton
