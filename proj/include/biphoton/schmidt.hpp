#pragma once

#include "biphoton/field.hpp"

#include <vector>

namespace biphoton {

/// Phi(x_s, x_i) = sum_n sqrt(lambda_n) phi_n(x_s) psi_n(x_i) on the grid.
/// Columns of the mode matrices are orthonormal under sum f* g * spacing.
struct SchmidtDecomposition {
    Eigen::VectorXd lambdas;        // descending, sum 1
    Eigen::MatrixXcd modes_signal;  // n_signal x rank
    Eigen::MatrixXcd modes_idler;   // n_idler x rank
    Axis signal_axis;
    Axis idler_axis;

    Eigen::Index rank() const { return lambdas.size(); }
};

inline constexpr double kLambdaTruncation = 1e-12;

/// SVD of Phi * sqrt(ds * di). The input must be normalized (|norm - 1| <= 1e-8).
SchmidtDecomposition decompose(const TwoPhotonAmplitude& tpa);

/// Schmidt coefficients only (no modes); same normalization and truncation as decompose().
Eigen::VectorXd schmidt_coefficients(const TwoPhotonAmplitude& tpa);

/// K = 1 / sum lambda_n^2
double schmidt_number(const SchmidtDecomposition& dec);
double schmidt_number(const Eigen::VectorXd& lambdas);

/// tr(rho_s^2) from the reduced signal density matrix built by direct
/// summation. Shares no code with decompose().
double purity(const TwoPhotonAmplitude& tpa);

/// sum_x rho_s(x, -x) dx: overlap of the signal with its inverted copy.
std::complex<double> g1_inverted_overlap(const TwoPhotonAmplitude& tpa);

struct ParityClassification {
    std::vector<int> parity;           // +1 even, -1 odd
    Eigen::VectorXd score;             // |sum phi(x) phi*(-x) dx|
    Eigen::VectorXcd value;            // sum phi(x) phi*(-x) dx
    std::vector<bool> ambiguous;       // score < 0.9

    /// sum_n parity_n * lambda_n
    double weighted_sum(const Eigen::VectorXd& lambdas) const;
};

inline constexpr double kAmbiguousParityScore = 0.9;

/// Parity of each signal mode from its inversion overlap.
ParityClassification parity_classification(const SchmidtDecomposition& dec);

struct GeometricFit {
    double lambda0 = 0.0;
    double alpha = 0.0;
    double rms_residual = 0.0;  // rms of (fit - lambda) / lambda over the fitted modes
    int n_modes_used = 0;
    double normalization_mismatch = 0.0;  // |lambda0 - (1 - alpha)|
};

/// Straight-line fit of log(lambda_m) against m over the first n_modes
/// positive coefficients.
GeometricFit fit_geometric(const Eigen::VectorXd& lambdas, int n_modes);

/// sum_m (lambda_2m - lambda_2m+1), the alternating spectrum sum.
double alternating_sum(const Eigen::VectorXd& lambdas);

}  // namespace biphoton
