#include "biphoton/schmidt.hpp"

#include "biphoton/errors.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <string>

namespace biphoton {

namespace {

void require_normalized(const TwoPhotonAmplitude& tpa) {
    const double n = norm(tpa);
    if (!(std::abs(n - 1.0) <= 1e-8))
        throw PreconditionError("Schmidt decomposition expects a normalized amplitude (norm " +
                                std::to_string(n) + ")");
}

bool is_real(const Eigen::MatrixXcd& m) { return m.imag().cwiseAbs().maxCoeff() == 0.0; }

Eigen::VectorXd coefficients_from_singular_values(const Eigen::VectorXd& sv, Eigen::Index& rank) {
    Eigen::VectorXd lambdas = sv.array().square();
    lambdas /= lambdas.sum();
    rank = 0;
    while (rank < lambdas.size() && lambdas(rank) >= kLambdaTruncation) ++rank;
    return lambdas.head(rank);
}

Eigen::VectorXcd chirp_phase(const Axis& axis, double chirp) {
    Eigen::VectorXcd phase(axis.n);
    for (int j = 0; j < axis.n; ++j) {
        const double x = axis.coordinate(j);
        phase(j) = std::polar(1.0, chirp * x * x);
    }
    return phase;
}

}  // namespace

SchmidtDecomposition decompose(const TwoPhotonAmplitude& tpa) {
    require_normalized(tpa);
    const double weight = std::sqrt(tpa.signal.spacing * tpa.idler.spacing);

    Eigen::VectorXd sv;
    Eigen::MatrixXcd u, v;
    if (is_real(tpa.values)) {
        const Eigen::MatrixXd m = tpa.values.real() * weight;
        Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        sv = svd.singularValues();
        u = svd.matrixU().cast<std::complex<double>>();
        v = svd.matrixV().cast<std::complex<double>>();
    } else {
        const Eigen::MatrixXcd m = tpa.values * weight;
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        sv = svd.singularValues();
        u = svd.matrixU();
        v = svd.matrixV();
    }

    SchmidtDecomposition dec;
    Eigen::Index rank = 0;
    dec.lambdas = coefficients_from_singular_values(sv, rank);
    dec.signal_axis = tpa.signal;
    dec.idler_axis = tpa.idler;
    // Phi * sqrt(ds di) = U S V^H  =>  phi_n = U_n / sqrt(ds), psi_n = conj(V_n) / sqrt(di)
    dec.modes_signal = u.leftCols(rank) / std::sqrt(tpa.signal.spacing);
    dec.modes_idler = v.leftCols(rank).conjugate() / std::sqrt(tpa.idler.spacing);
    if (tpa.chirp_signal != 0.0)
        dec.modes_signal = chirp_phase(tpa.signal, tpa.chirp_signal).asDiagonal() * dec.modes_signal;
    if (tpa.chirp_idler != 0.0)
        dec.modes_idler = chirp_phase(tpa.idler, tpa.chirp_idler).asDiagonal() * dec.modes_idler;
    return dec;
}

Eigen::VectorXd schmidt_coefficients(const TwoPhotonAmplitude& tpa) {
    require_normalized(tpa);
    const double weight = std::sqrt(tpa.signal.spacing * tpa.idler.spacing);
    Eigen::VectorXd sv;
    if (is_real(tpa.values)) {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(tpa.values.real() * weight);
        sv = svd.singularValues();
    } else {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(tpa.values * weight);
        sv = svd.singularValues();
    }
    Eigen::Index rank = 0;
    return coefficients_from_singular_values(sv, rank);
}

double schmidt_number(const Eigen::VectorXd& lambdas) { return 1.0 / lambdas.squaredNorm(); }

double schmidt_number(const SchmidtDecomposition& dec) { return schmidt_number(dec.lambdas); }

double purity(const TwoPhotonAmplitude& tpa) {
    const double ds = tpa.signal.spacing;
    const double di = tpa.idler.spacing;
    // rho_s(x, x') = sum_i Phi(x, x_i) Phi*(x', x_i) di
    if (is_real(tpa.values)) {
        const Eigen::MatrixXd phi = tpa.values.real();
        const Eigen::MatrixXd rho = (phi * phi.transpose()) * di;
        return rho.colwise().squaredNorm().sum() * ds * ds;
    }
    const Eigen::MatrixXcd rho = (tpa.values * tpa.values.adjoint()) * di;
    return rho.colwise().squaredNorm().sum() * ds * ds;
}

std::complex<double> g1_inverted_overlap(const TwoPhotonAmplitude& tpa) {
    if (!tpa.signal.is_centered())
        throw PreconditionError("the inversion overlap needs a signal axis centered at 0");
    const Axis& axis = tpa.signal;
    std::complex<double> sum = 0.0;
    for (int j = 0; j < axis.n; ++j)
        sum += tpa.values.row(j).dot(tpa.values.row(axis.mirror_index(j)));
    // Eigen's dot conjugates its first argument: sum_l conj(Phi(j,l)) Phi(-j,l).
    return std::conj(sum) * tpa.signal.spacing * tpa.idler.spacing;
}

double ParityClassification::weighted_sum(const Eigen::VectorXd& lambdas) const {
    double sum = 0.0;
    const Eigen::Index n = std::min<Eigen::Index>(lambdas.size(), parity.size());
    for (Eigen::Index i = 0; i < n; ++i) sum += parity[i] * lambdas(i);
    return sum;
}

ParityClassification parity_classification(const SchmidtDecomposition& dec) {
    const Axis& axis = dec.signal_axis;
    if (!axis.is_centered())
        throw PreconditionError("parity classification needs a signal axis centered at 0");
    ParityClassification out;
    const Eigen::Index rank = dec.rank();
    out.score.resize(rank);
    out.value.resize(rank);
    for (Eigen::Index n = 0; n < rank; ++n) {
        std::complex<double> v = 0.0;
        for (int j = 0; j < axis.n; ++j)
            v += dec.modes_signal(j, n) * std::conj(dec.modes_signal(axis.mirror_index(j), n));
        v *= axis.spacing;
        out.value(n) = v;
        out.score(n) = std::abs(v);
        out.parity.push_back(v.real() >= 0.0 ? +1 : -1);
        out.ambiguous.push_back(out.score(n) < kAmbiguousParityScore);
    }
    return out;
}

GeometricFit fit_geometric(const Eigen::VectorXd& lambdas, int n_modes) {
    if (n_modes < 3) throw ConfigurationError("geometric fit needs at least 3 modes");
    int used = 0;
    while (used < n_modes && used < lambdas.size() && lambdas(used) > 0.0) ++used;
    if (used < 3) throw DegenerateInputError("fewer than 3 positive Schmidt coefficients");

    const Eigen::ArrayXd m = Eigen::ArrayXd::LinSpaced(used, 0.0, used - 1.0);
    const Eigen::ArrayXd y = lambdas.head(used).array().log();
    const double mm = m.mean();
    const double ym = y.mean();
    const double slope = ((m - mm) * (y - ym)).sum() / (m - mm).square().sum();
    const double intercept = ym - slope * mm;

    GeometricFit fit;
    fit.alpha = std::exp(slope);
    fit.lambda0 = std::exp(intercept);
    fit.n_modes_used = used;
    if (!(fit.alpha < 1.0))
        throw DegenerateInputError("Schmidt coefficients do not decay (alpha >= 1)");
    const Eigen::ArrayXd model = fit.lambda0 * (slope * m).exp();
    const Eigen::ArrayXd rel = (model - lambdas.head(used).array()) / lambdas.head(used).array();
    fit.rms_residual = std::sqrt(rel.square().mean());
    fit.normalization_mismatch = std::abs(fit.lambda0 - (1.0 - fit.alpha));
    return fit;
}

double alternating_sum(const Eigen::VectorXd& lambdas) {
    double sum = 0.0;
    for (Eigen::Index n = 0; n < lambdas.size(); ++n) sum += (n % 2 == 0 ? 1.0 : -1.0) * lambdas(n);
    return sum;
}

}  // namespace biphoton
