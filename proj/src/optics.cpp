#include "biphoton/optics.hpp"

#include "biphoton/errors.hpp"
#include "grid_kernels.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace biphoton {

ArmChain ArmChain::both(std::vector<Element> elements) { return ArmChain{elements, elements}; }

RayMatrix RayMatrix::operator*(const RayMatrix& r) const {
    return {a * r.a + b * r.c, a * r.b + b * r.d, c * r.a + d * r.c, c * r.b + d * r.d};
}

void validate(const Element& element) {
    if (const auto* fs = std::get_if<FreeSpace>(&element)) {
        if (!(fs->distance >= 0.0) || !std::isfinite(fs->distance))
            throw ConfigurationError("free-space distance must be finite and >= 0");
    } else {
        const double f = std::get<ThinLens>(element).focal_length;
        if (f == 0.0 || !std::isfinite(f)) throw ConfigurationError("lens focal length must be finite and nonzero");
    }
}

RayMatrix ray_matrix(const std::vector<Element>& elements) {
    RayMatrix m;
    for (const Element& e : elements) {
        validate(e);
        if (const auto* fs = std::get_if<FreeSpace>(&e))
            m = RayMatrix::free_space(fs->distance) * m;
        else
            m = RayMatrix::lens(std::get<ThinLens>(e).focal_length) * m;
    }
    return m;
}

double free_space_sampling_ratio(const Axis& momentum_axis, double wavenumber, double z) {
    return momentum_axis.max_abs() * momentum_axis.spacing * std::abs(z) / wavenumber /
           std::numbers::pi;
}

namespace {

constexpr double kPi = std::numbers::pi;

void check_ratio(double ratio, const char* what, Arm arm) {
    if (!(ratio < 1.0))
        throw SamplingError(std::string(what) + " on the " + to_string(arm) +
                            " arm aliases on this grid (edge phase step " + std::to_string(ratio) +
                            " pi)");
}

// Position-domain amplitude in, position-domain amplitude out; only the
// samples along `arm` are touched.
void fold_chirp(TwoPhotonAmplitude& tpa, Arm arm) {
    const double chirp = tpa.chirp(arm);
    if (chirp == 0.0) return;
    check_ratio(chirp_sampling_ratio(tpa.axis(arm), chirp), "residual wavefront curvature", arm);
    detail::multiply_quadratic_phase(tpa.values, detail::dim_of(arm), tpa.axis(arm), chirp);
    tpa.chirp(arm) = 0.0;
}

// Free-space kernel along one arm of a position-domain amplitude; z may be
// negative (back-propagation) when used inside a canonical transform.
void fresnel_along(TwoPhotonAmplitude& tpa, Arm arm, double z) {
    if (z == 0.0) return;
    const int dim = detail::dim_of(arm);
    const Axis momentum = tpa.axis(arm).conjugate();
    const double k = tpa.wavenumber(arm);
    check_ratio(free_space_sampling_ratio(momentum, k, z), "free-space propagation", arm);
    detail::unitary_dft(tpa.values, dim, tpa.axis(arm).spacing, -1);
    detail::multiply_quadratic_phase(tpa.values, dim, momentum, -z / (2.0 * k));
    detail::unitary_dft(tpa.values, dim, momentum.spacing, +1);
}

// x -> scale * x: Phi(x) -> Phi(x / scale) / sqrt|scale|.
void rescale_along(TwoPhotonAmplitude& tpa, Arm arm, double scale) {
    const int dim = detail::dim_of(arm);
    Axis& axis = tpa.axis(arm);
    if (scale < 0.0) detail::mirror(tpa.values, dim);
    tpa.values /= std::sqrt(std::abs(scale));
    axis = Axis::centered(axis.n, axis.spacing * std::abs(scale), Domain::Position);
}

// Applies the metaplectic operator of `m` along one arm. Two factorizations
// are available:
//   Fresnel route  M = lens(C/A) * scale(A) * free(B/A)
//   Fourier route  M = lens(D/B) * fourier(B) * lens(A/B)
// On a conjugate grid the sampling ratios of the two sampled steps multiply
// to exactly 1, so the route with the smaller ratio always passes.
void canonical_transform(TwoPhotonAmplitude& tpa, Arm arm, RayMatrix m) {
    const double k = tpa.wavenumber(arm);
    if (tpa.chirp(arm) != 0.0) {
        m = m * RayMatrix{1.0, 0.0, 2.0 * tpa.chirp(arm) / k, 1.0};
        tpa.chirp(arm) = 0.0;
    }
    if (m.is_identity()) return;

    const Axis position = tpa.axis(arm);
    const Axis momentum = position.conjugate();
    const double fresnel_ratio =
        m.a != 0.0 ? free_space_sampling_ratio(momentum, k, m.b / m.a) : INFINITY;
    const double fourier_ratio =
        m.b != 0.0 ? chirp_sampling_ratio(position, 0.5 * k * m.a / m.b) : INFINITY;

    if (fresnel_ratio <= fourier_ratio) {
        check_ratio(fresnel_ratio, "optical chain", arm);
        fresnel_along(tpa, arm, m.b / m.a);
        rescale_along(tpa, arm, m.a);
        tpa.chirp(arm) = 0.5 * k * m.c / m.a;
        return;
    }

    check_ratio(fourier_ratio, "optical chain", arm);
    const int dim = detail::dim_of(arm);
    detail::multiply_quadratic_phase(tpa.values, dim, position, 0.5 * k * m.a / m.b);
    detail::unitary_dft(tpa.values, dim, position.spacing, -1);
    // The momentum samples now describe the output field at x = p * B / k.
    const double sign = m.b > 0.0 ? 1.0 : -1.0;
    if (sign < 0.0) detail::mirror(tpa.values, dim);
    tpa.values *= std::polar(std::sqrt(k / std::abs(m.b)), -0.25 * kPi * sign);
    tpa.axis(arm) = Axis::centered(position.n, std::abs(m.b) * momentum.spacing / k, Domain::Position);
    tpa.chirp(arm) = 0.5 * k * m.d / m.b;
}

}  // namespace

TwoPhotonAmplitude propagate_free(const TwoPhotonAmplitude& tpa, double z_signal, double z_idler) {
    validate(Element{FreeSpace{z_signal}});
    validate(Element{FreeSpace{z_idler}});
    const Domain original = tpa.domain();
    TwoPhotonAmplitude out = in_domain(tpa, Domain::Momentum);
    const double zs[2] = {z_signal, z_idler};
    for (Arm arm : {Arm::Signal, Arm::Idler}) {
        const double z = zs[arm == Arm::Signal ? 0 : 1];
        if (z == 0.0) continue;
        const double k = out.wavenumber(arm);
        check_ratio(free_space_sampling_ratio(out.axis(arm), k, z), "free-space propagation", arm);
        detail::multiply_quadratic_phase(out.values, detail::dim_of(arm), out.axis(arm), -z / (2.0 * k));
    }
    out.z_label += z_signal;
    return in_domain(out, original);
}

TwoPhotonAmplitude apply_lens(const TwoPhotonAmplitude& tpa, double focal_length, ArmSelection arm) {
    validate(Element{ThinLens{focal_length}});
    const Domain original = tpa.domain();
    TwoPhotonAmplitude out = in_domain(tpa, Domain::Position);
    for (Arm a : {Arm::Signal, Arm::Idler}) {
        const bool selected = arm == ArmSelection::Both ||
                              (arm == ArmSelection::Signal && a == Arm::Signal) ||
                              (arm == ArmSelection::Idler && a == Arm::Idler);
        if (!selected) continue;
        out.chirp(a) += -out.wavenumber(a) / (2.0 * focal_length);
        fold_chirp(out, a);
    }
    return in_domain(out, original);
}

TwoPhotonAmplitude apply_chain(const TwoPhotonAmplitude& tpa, const ArmChain& chain) {
    const RayMatrix ms = ray_matrix(chain.signal_elements);
    const RayMatrix mi = ray_matrix(chain.idler_elements);
    const Domain original = tpa.domain();
    TwoPhotonAmplitude out = in_domain(tpa, Domain::Position);
    canonical_transform(out, Arm::Signal, ms);
    canonical_transform(out, Arm::Idler, mi);
    for (const Element& e : chain.signal_elements)
        if (const auto* fs = std::get_if<FreeSpace>(&e)) out.z_label += fs->distance;
    return in_domain(out, original);
}

}  // namespace biphoton
