#pragma once

#include "biphoton/field.hpp"

#include <variant>
#include <vector>

namespace biphoton {

struct FreeSpace {
    double distance = 0.0;  // m, >= 0
};

struct ThinLens {
    double focal_length = 0.0;  // m, != 0
};

using Element = std::variant<FreeSpace, ThinLens>;

/// Optical elements seen by each photon, in the order they are traversed.
struct ArmChain {
    std::vector<Element> signal_elements;
    std::vector<Element> idler_elements;

    static ArmChain both(std::vector<Element> elements);
};

enum class ArmSelection { Signal, Idler, Both };

/// Paraxial ray-transfer matrix acting on (x, p/k).
struct RayMatrix {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static RayMatrix free_space(double distance) { return {1.0, distance, 0.0, 1.0}; }
    static RayMatrix lens(double focal_length) { return {1.0, 0.0, -1.0 / focal_length, 1.0}; }

    /// this * rhs (rhs acts first).
    RayMatrix operator*(const RayMatrix& rhs) const;
    double determinant() const { return a * d - b * c; }
    bool is_identity() const { return a == 1.0 && b == 0.0 && c == 0.0 && d == 1.0; }
};

/// Product of the element matrices, first element acting first.
RayMatrix ray_matrix(const std::vector<Element>& elements);

void validate(const Element& element);

/// Free-space Fresnel propagation: multiplies the momentum representation by
/// exp(-i p^2 z_s / (2 k_s)) * exp(-i q^2 z_i / (2 k_i)). Returns the result
/// in the input's domain and advances z_label by z_signal.
TwoPhotonAmplitude propagate_free(const TwoPhotonAmplitude& tpa, double z_signal, double z_idler);

/// Thin lens: multiplies the position representation by exp(-i k x^2 / (2 f))
/// on the selected coordinate(s). Returns the result in the input's domain.
TwoPhotonAmplitude apply_lens(const TwoPhotonAmplitude& tpa, double focal_length, ArmSelection arm);

/// Applies each arm's element list. Consecutive elements are merged into a
/// single ray matrix and applied as one canonical transform, which changes
/// the grid spacing of the output axes (e.g. x = p * f / k at a Fourier
/// plane) so the field stays on n samples at every plane. Wavefront
/// curvature left at the output plane is kept in the residual chirp.
/// Exact up to a constant phase per arm.
TwoPhotonAmplitude apply_chain(const TwoPhotonAmplitude& tpa, const ArmChain& chain);

/// Ratio (in units of pi) of the edge phase step of the free-space mask for
/// distance z on `momentum_axis`. Below 1 passes the sampling check.
double free_space_sampling_ratio(const Axis& momentum_axis, double wavenumber, double z);

}  // namespace biphoton
