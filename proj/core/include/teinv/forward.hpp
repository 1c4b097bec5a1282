#pragma once
// Backward-Euler time stepping for the coupled 1D thermoelastic system with
// memory. Each step solves one banded block system in the interleaved interior
// unknowns (u_1, theta_1, u_2, theta_2, ...); the step matrix is
// time-independent and factored once per solver instance.

#include "teinv/banded.hpp"
#include "teinv/problem.hpp"

namespace teinv {

/// Assembles the per-step system coupling the interior nodal values (u_i, theta_i):
///   u rows:     rho M + tau^2 (lambda + 2 mu) S   and   tau^2 gamma G        on theta
///   theta rows: -T0 gamma G'                      and   rho C_s M + tau (kappa + tau k(0)) S
/// where M, S, G are the P1 mass, stiffness and gradient-coupling matrices.
/// The memory quadrature's j = i term is implicit, which is where the
/// tau^2 k(0) S contribution comes from.
BandedMatrix assemble_step_system(const MaterialParams& params, const SpaceGrid& grid, double tau,
                                  const Kernel& kernel);

class ForwardSolver {
  public:
    ForwardSolver(MaterialParams params, SpaceGrid grid, TimeGrid time, Kernel kernel);

    /// Advances the coupled system from the given initial data. Initial
    /// displacement and temperature must vanish at the boundary nodes.
    ForwardSolution solve(const SourceTerm& load, const SourceTerm& heat,
                          const InitialData& init) const;

    /// Source-only problem: zero initial data, the separable source
    /// g(t) * direction(x) placed in the requested slot. This is both the
    /// sensitivity problem and the building block of the measurement maps.
    ForwardSolution solve_source_only(const TimeFn& g, const Field& direction,
                                      SourceSlot slot) const;

    const SpaceGrid& grid() const { return grid_; }
    const TimeGrid& time() const { return time_; }
    const MaterialParams& params() const { return params_; }

  private:
    MaterialParams params_;
    SpaceGrid grid_;
    TimeGrid time_;
    Kernel kernel_;
    BandedMatrix matrix_;
    BandedLU lu_;
};

/// One-shot convenience wrapper around ForwardSolver.
ForwardSolution solve_forward(const ProblemSpec& spec);

/// Sensitivity solve: identical to the source-only direct problem with the
/// perturbation in the right-hand side.
ForwardSolution solve_sensitivity(const Field& direction, const TimeFn& g,
                                  const ForwardSolver& solver, SourceSlot slot);

}  // namespace teinv
