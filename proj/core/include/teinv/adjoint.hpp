#pragma once
// Backward-in-time solver for the general adjoint system: a terminal-value
// problem stepped with two-point forward Euler differences, mirroring the
// forward scheme. The adjoint memory quadrature is anticausal; its j = i term
// is implicit, later levels are lagged.

#include "teinv/banded.hpp"
#include "teinv/problem.hpp"

namespace teinv {

struct AdjointSpec {
    Field terminal_displacement;  // u*(., T)
    Field terminal_velocity;      // du*/dt(., T)
    Field terminal_temperature;   // theta*(., T)
    SourceTerm load_forcing;      // p*
    SourceTerm heat_forcing;      // h*
};

struct AdjointSolution {
    Trajectory displacement;  // u*, levels 0..n_t
    Trajectory temperature;   // theta*
};

class AdjointSolver {
  public:
    AdjointSolver(MaterialParams params, SpaceGrid grid, TimeGrid time, Kernel kernel);

    AdjointSolution solve(const AdjointSpec& spec) const;

    /// Spec with zero terminal data and zero forcings, ready to be filled in.
    AdjointSpec blank_spec() const;

    const SpaceGrid& grid() const { return grid_; }
    const TimeGrid& time() const { return time_; }

  private:
    MaterialParams params_;
    SpaceGrid grid_;
    TimeGrid time_;
    Kernel kernel_;
    BandedMatrix matrix_;
    BandedLU lu_;
};

}  // namespace teinv
