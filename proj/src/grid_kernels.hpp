#pragma once

// Per-dimension kernels shared by the field and optics modules. Dimension 0
// is the signal (row) index, dimension 1 the idler (column) index.

#include "biphoton/axis.hpp"

#include <Eigen/Core>

namespace biphoton::detail {

inline int dim_of(Arm arm) { return arm == Arm::Signal ? 0 : 1; }

/// Unitary DFT along one dimension of a centered grid.
/// sign = -1: position -> momentum, sign = +1: momentum -> position.
void unitary_dft(Eigen::MatrixXcd& m, int dim, double spacing, int sign);

/// m *= exp(i * coefficient * x^2) along one dimension.
void multiply_quadratic_phase(Eigen::MatrixXcd& m, int dim, const Axis& axis, double coefficient);

/// j -> (n - j) mod n along one dimension.
void mirror(Eigen::MatrixXcd& m, int dim);

}  // namespace biphoton::detail
