#pragma once
// Shared helpers for the forward and adjoint time steppers.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "teinv/banded.hpp"
#include "teinv/grid.hpp"

namespace teinv::detail {

// Homogeneous Dirichlet data: boundary entries must already be (numerically)
// zero; they are then pinned to exact zeros so downstream identities hold
// without roundoff at the boundary nodes.
inline Field pin_boundary(Field f, const char* what) {
    const int n = f.size() - 1;
    const double scale = 1.0 + max_abs(f);
    if (std::abs(f[0]) > 1e-12 * scale || std::abs(f[n]) > 1e-12 * scale)
        throw std::invalid_argument(std::string(what) +
                                    ": data incompatible with homogeneous Dirichlet boundary");
    f[0] = 0.0;
    f[n] = 0.0;
    return f;
}

// Velocity data enters the scheme only through its interior action (the state
// itself is pinned at the boundary for all times), so stray boundary values --
// e.g. noise in a measurement residual used as terminal velocity -- are
// dropped without complaint.
inline Field pin_boundary_quiet(Field f) {
    f[0] = 0.0;
    f[f.size() - 1] = 0.0;
    return f;
}

inline void check_finite(const Field& f, const char* what) {
    if (!f.all_finite()) throw std::runtime_error(std::string(what) + ": non-finite values");
}

// Verifies ||A x - b|| <= 1e-10 * scale for each linear step solve.
inline void check_step_residual(const BandedMatrix& a, std::span<const double> x,
                                std::span<const double> b) {
    const std::vector<double> ax = a.apply(x);
    double res2 = 0.0, scale2 = 0.0;
    for (size_t i = 0; i < ax.size(); ++i) {
        const double r = ax[i] - b[i];
        res2 += r * r;
        scale2 += b[i] * b[i] + ax[i] * ax[i];
    }
    if (std::sqrt(res2) > 1e-10 * (std::sqrt(scale2) + 1e-300) + 1e-280)
        throw std::runtime_error("time step linear solve residual exceeded tolerance");
}

// Expands interior solution values (interleaved u, theta) into full nodal
// fields with exact zero boundary entries.
inline void split_interleaved(std::span<const double> x, Field& u, Field& theta) {
    const int m = u.size() - 2;
    for (int r = 1; r <= m; ++r) {
        u[r] = x[static_cast<size_t>(2 * (r - 1))];
        theta[r] = x[static_cast<size_t>(2 * (r - 1) + 1)];
    }
}

}  // namespace teinv::detail
