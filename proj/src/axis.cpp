#include "biphoton/axis.hpp"

#include "biphoton/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace biphoton {

const char* to_string(Domain d) { return d == Domain::Position ? "position" : "momentum"; }
const char* to_string(Arm a) { return a == Arm::Signal ? "signal" : "idler"; }

Axis Axis::centered(int n, double spacing, Domain domain) {
    Axis axis{n, spacing, 0.0, domain};
    validate(axis);
    return axis;
}

Eigen::ArrayXd Axis::coordinates() const {
    Eigen::ArrayXd x(n);
    for (int j = 0; j < n; ++j) x(j) = coordinate(j);
    return x;
}

bool Axis::contains(double x) const {
    const double half = 0.5 * spacing;
    return x >= lower() - half && x <= upper() + half;
}

int Axis::nearest_index(double x) const {
    const long j = std::lround((x - center) / spacing) + n / 2;
    return static_cast<int>(std::clamp<long>(j, 0, n - 1));
}

Axis Axis::conjugate() const {
    if (!is_centered()) throw PreconditionError("conjugate grid requires a centered axis");
    return Axis{n, 2.0 * std::numbers::pi / (n * spacing), 0.0,
                domain == Domain::Position ? Domain::Momentum : Domain::Position};
}

void validate(const Axis& axis) {
    if (axis.n < 16 || (axis.n & (axis.n - 1)) != 0)
        throw ConfigurationError("axis size must be a power of two >= 16, got " +
                                 std::to_string(axis.n));
    if (!(axis.spacing > 0.0) || !std::isfinite(axis.spacing))
        throw ConfigurationError("axis spacing must be positive and finite");
    if (!std::isfinite(axis.center)) throw ConfigurationError("axis center must be finite");
}

bool same_grid(const Axis& a, const Axis& b) {
    return a.n == b.n && a.domain == b.domain && a.center == b.center &&
           std::abs(a.spacing - b.spacing) <= 1e-12 * std::max(a.spacing, b.spacing);
}

}  // namespace biphoton
