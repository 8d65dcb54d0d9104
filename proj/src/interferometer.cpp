#include "biphoton/interferometer.hpp"

#include "biphoton/errors.hpp"
#include "grid_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace biphoton {

namespace {

void require_inversion_ready(const TwoPhotonAmplitude& tpa, Arm arm) {
    if (tpa.domain() != Domain::Position)
        throw PreconditionError("the interferometer acts on the position representation");
    if (!tpa.axis(arm).is_centered())
        throw PreconditionError(std::string("inversion needs a centered ") + to_string(arm) + " axis");
}

struct IndexRange {
    int lo = 0;
    int hi = -1;  // inclusive
};

IndexRange window_indices(const Axis& axis, const Slit& slit, const char* which) {
    if (slit.full) return {0, axis.n - 1};
    if (!(slit.width >= 0.0) || !std::isfinite(slit.center))
        throw ConfigurationError(std::string(which) + " slit needs a finite center and width >= 0");
    const double half = 0.5 * slit.width + 1e-9 * axis.spacing;
    IndexRange r{axis.n, -1};
    for (int j = 0; j < axis.n; ++j) {
        if (std::abs(axis.coordinate(j) - slit.center) <= half) {
            r.lo = std::min(r.lo, j);
            r.hi = std::max(r.hi, j);
        }
    }
    if (r.hi < r.lo) {
        if (!axis.contains(slit.center))
            throw PreconditionError(std::string(which) + " slit lies outside the grid");
        const int j = axis.nearest_index(slit.center);
        r = {j, j};
    }
    return r;
}

}  // namespace

TwoPhotonAmplitude invert_arm(const TwoPhotonAmplitude& tpa, Arm arm) {
    require_inversion_ready(tpa, arm);
    TwoPhotonAmplitude out = tpa;
    detail::mirror(out.values, detail::dim_of(arm));
    return out;
}

PortIntensities interfere(const TwoPhotonAmplitude& tpa, double theta) {
    require_inversion_ready(tpa, Arm::Signal);
    const Eigen::MatrixXcd inverted = invert_arm(tpa, Arm::Signal).values;
    const std::complex<double> phase = std::polar(1.0, theta);
    PortIntensities ports;
    ports.constructive = (0.5 * (tpa.values + phase * inverted)).cwiseAbs2();
    ports.destructive = (0.5 * (tpa.values - phase * inverted)).cwiseAbs2();
    ports.signal = tpa.signal;
    ports.idler = tpa.idler;
    ports.theta = theta;
    return ports;
}

PortRates conditional_rates(const PortIntensities& ports, const Slit& slit_signal,
                            const Slit& slit_idler) {
    const IndexRange rs = window_indices(ports.signal, slit_signal, "signal");
    const IndexRange ri = window_indices(ports.idler, slit_idler, "idler");
    const Eigen::Index ns = rs.hi - rs.lo + 1;
    const Eigen::Index ni = ri.hi - ri.lo + 1;
    const double cell = ports.signal.spacing * ports.idler.spacing;
    return PortRates{ports.constructive.block(rs.lo, ri.lo, ns, ni).sum() * cell,
                     ports.destructive.block(rs.lo, ri.lo, ns, ni).sum() * cell};
}

PortRates single_arm_rates(const PortIntensities& ports, const Slit& slit_signal) {
    return conditional_rates(ports, slit_signal, Slit::whole());
}

double schmidt_from_rates(double p_plus, double p_minus) {
    if (!(p_plus >= 0.0) || !(p_minus >= 0.0))
        throw PreconditionError("port rates must be nonnegative");
    const double total = p_plus + p_minus;
    const double contrast = p_plus - p_minus;
    if (std::abs(contrast) <= 1e-14 * total || total == 0.0)
        throw SaturationError("P+ = P-: visibility below the numeric floor, K diverges");
    if (contrast < 0.0)
        throw PortLabelError("P+ < P-: constructive and destructive ports are swapped");
    return total / contrast;
}

PhaseScan phase_scan(const TwoPhotonAmplitude& tpa, const std::vector<double>& thetas,
                     const Slit& slit_signal, const Slit& slit_idler, Port monitored) {
    if (thetas.size() < 2) throw ConfigurationError("a phase scan needs at least 2 phases");
    PhaseScan scan;
    scan.thetas = thetas;
    scan.rates.reserve(thetas.size());
    for (double theta : thetas) {
        const PortRates r = conditional_rates(interfere(tpa, theta), slit_signal, slit_idler);
        scan.rates.push_back(monitored == Port::Constructive ? r.p_plus : r.p_minus);
    }
    const auto [lo, hi] = std::minmax_element(scan.rates.begin(), scan.rates.end());
    const double sum = *hi + *lo;
    if (!(sum > 0.0)) throw DegenerateInputError("phase scan recorded no counts");
    scan.visibility = std::clamp((*hi - *lo) / sum, 0.0, 1.0);
    if (scan.visibility <= 1e-14) {
        scan.saturated = true;
        scan.k_estimate = std::numeric_limits<double>::infinity();
    } else {
        scan.k_estimate = 1.0 / scan.visibility;
    }
    return scan;
}

}  // namespace biphoton
