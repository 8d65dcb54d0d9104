#pragma once

#include <Eigen/Core>

namespace biphoton {

enum class Domain { Position, Momentum };
enum class Arm { Signal, Idler };

const char* to_string(Domain d);
const char* to_string(Arm a);
inline Arm other(Arm a) { return a == Arm::Signal ? Arm::Idler : Arm::Signal; }

/// Uniform sample grid. Sample j sits at center + (j - n/2) * spacing, so a
/// centered grid has its origin on sample n/2 and is symmetric under
/// j -> (n - j) mod n.
struct Axis {
    int n = 0;
    double spacing = 0.0;  // m (Position) or rad/m (Momentum)
    double center = 0.0;
    Domain domain = Domain::Position;

    /// Validated centered axis; n must be a power of two >= 16.
    static Axis centered(int n, double spacing, Domain domain);

    double coordinate(int j) const { return center + (j - n / 2) * spacing; }
    Eigen::ArrayXd coordinates() const;

    bool is_centered() const { return center == 0.0; }
    /// Largest |coordinate| on a centered grid, (n/2) * spacing.
    double max_abs() const { return 0.5 * n * spacing; }
    double lower() const { return coordinate(0); }
    double upper() const { return coordinate(n - 1); }
    bool contains(double x) const;

    /// Index of the sample closest to x (clamped to the grid).
    int nearest_index(double x) const;
    /// Index of the sample at -x on a centered grid.
    int mirror_index(int j) const { return (n - j) % n; }

    /// The reciprocal grid: spacing 2*pi/(n*spacing), other domain, centered.
    Axis conjugate() const;
};

void validate(const Axis& axis);
bool same_grid(const Axis& a, const Axis& b);

}  // namespace biphoton
