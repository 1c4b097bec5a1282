#pragma once
// Matrix-free P1 finite element operators on the uniform unit-interval mesh:
// consistent mass, stiffness and gradient-coupling products, and the discrete
// L2 inner product realized through the consistent mass matrix.

#include <vector>

#include "teinv/grid.hpp"

namespace teinv {

/// Discrete L2 inner product a' M b with the consistent P1 mass matrix.
double inner_l2(const Field& a, const Field& b);

/// Discrete L2 norm sqrt(f' M f).
double norm_l2(const Field& f);

/// y = M z (consistent mass), all rows including boundary rows.
std::vector<double> mass_apply(const Field& z);

/// y = S z with S_ij = (phi_j', phi_i'), all rows.
std::vector<double> stiffness_apply(const Field& z);

/// y_i = (z', phi_i): gradient tested against basis functions.
std::vector<double> gradient_apply(const Field& z);

/// y_i = (z, phi_i'): transpose coupling.
std::vector<double> gradient_transpose_apply(const Field& z);

}  // namespace teinv
