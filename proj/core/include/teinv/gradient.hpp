#pragma once
// Cost functionals, adjoint-based L2 gradients, the Sobolev gradient via a
// weighted elliptic Neumann solve, and the exact line-search step size.

#include "teinv/adjoint.hpp"
#include "teinv/banded.hpp"
#include "teinv/forward.hpp"
#include "teinv/measurement.hpp"

namespace teinv {

/// Source-to-measurement map for one inverse problem: applies the measurement
/// functional to the sensitivity solve, and converts measurement residuals
/// into the data-term L2 gradient through the matching adjoint problem.
/// Both step matrices are factored once at construction.
class MeasurementOperator {
  public:
    MeasurementOperator(MaterialParams params, SpaceGrid grid, TimeGrid time, Kernel kernel,
                        TimeFn modulation, MeasurementKind kind);

    /// Measurement of the source-only solve with profile f.
    Field apply(const Field& f) const;

    /// L2 gradient of the data term 1/2 ||apply(f) - data||^2, given the
    /// residual apply(f) - data. Final-displacement problems place the
    /// residual as a terminal velocity and scale by -1/rho; time-averaged
    /// problems place it as a constant-in-time forcing.
    Field adjoint_gradient(const Field& residual) const;

    MeasurementKind kind() const { return kind_; }
    const SpaceGrid& grid() const { return forward_.grid(); }
    const TimeGrid& time() const { return forward_.time(); }
    const TimeFn& modulation() const { return modulation_; }
    const ForwardSolver& forward_solver() const { return forward_; }

  private:
    ForwardSolver forward_;
    AdjointSolver adjoint_;
    TimeFn modulation_;
    MeasurementKind kind_;
};

struct CostConfig {
    double beta = 0.0;  // Tikhonov weight
    Field remainder;    // measurement remainder, possibly noisy
};

/// 1/2 ||apply(f) - remainder||^2 + beta/2 ||f||^2 (one sensitivity solve).
double cost(const Field& f, const CostConfig& cfg, const MeasurementOperator& op);

/// Adjoint-based L2 gradient of the cost at f (one sensitivity + one adjoint solve).
Field grad_l2(const Field& f, const CostConfig& cfg, const MeasurementOperator& op);

/// Strictly positive weights of the H1 inner product behind the Sobolev gradient.
struct SobolevWeights {
    std::function<double(double)> mass_weight;       // r0
    std::function<double(double)> stiffness_weight;  // r1

    static SobolevWeights constants(double r0, double r1);
};

/// Tridiagonal matrix of the symmetric second-order scheme for
/// -(r1 j')' + r0 j = J with zero-Neumann ghost-point closure. Half-grid
/// weight samples outside [0,1] use constant extension of the boundary value.
/// Row sums reproduce the r0 nodal values.
BandedMatrix assemble_elliptic(const SobolevWeights& weights, const SpaceGrid& grid);

/// Sobolev gradient: solves the weighted elliptic Neumann problem with the L2
/// gradient as load.
Field grad_sobolev(const Field& l2_gradient, const SobolevWeights& weights);

/// Exact minimizer of tau -> 1/2 ||residual - tau image_dir||^2
///                        + beta/2 ||f - tau dir||^2,
/// i.e. the step size of a descent update f - tau * dir.
double optimal_step(const Field& residual, const Field& image_dir, const Field& f,
                    const Field& dir, double beta);

}  // namespace teinv
