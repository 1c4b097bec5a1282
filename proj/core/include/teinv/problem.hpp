#pragma once
// Material data, source terms and initial data for one direct, sensitivity
// or adjoint solve of the coupled 1D displacement-temperature system.

#include <functional>
#include <optional>

#include "teinv/grid.hpp"
#include "teinv/kernel.hpp"

namespace teinv {

using TimeFn = std::function<double(double)>;
using SpaceTimeFn = std::function<double(double, double)>;

enum class SourceSlot { Load, Heat };

struct MaterialParams {
    double rho = 1.0;            // mass density
    double specific_heat = 1.0;  // C_s
    double conductivity = 1.0;   // kappa
    double lambda = 1.0;         // first Lame coefficient
    double mu = 0.0;             // second Lame coefficient (shear)
    double coupling = 1.0;       // gamma
    double ref_temperature = 0.0;  // T0

    void validate() const;
};

/// Space-time source: an optional closed-form background plus an optional
/// separable part g(t) * profile(x) with the profile given nodally. Iterative
/// reconstructions feed their iterates through the separable part, so nodal
/// data is never pushed through a closed form.
class SourceTerm {
  public:
    SourceTerm() = default;

    static SourceTerm zero() { return SourceTerm(); }
    static SourceTerm of(SpaceTimeFn fn);
    static SourceTerm separable(TimeFn g, Field profile);
    static SourceTerm constant_in_time(Field profile);

    /// Adds a closed-form background to this source.
    SourceTerm& with_background(SpaceTimeFn fn);

    /// Nodal samples at time t.
    Field sample(const SpaceGrid& grid, double t) const;

    bool trivially_zero() const { return !background_ && !profile_; }

  private:
    SpaceTimeFn background_;
    TimeFn modulation_;
    std::optional<Field> profile_;
};

struct InitialData {
    Field displacement;  // u(.,0)
    Field velocity;      // du/dt(.,0)
    Field temperature;   // theta(.,0)
};

struct ForwardSolution {
    Trajectory displacement;  // u
    Trajectory temperature;   // theta
    Trajectory velocity;      // backward-difference velocities du_i
};

struct ProblemSpec {
    MaterialParams params;
    Kernel kernel{1.0, 1.0};
    SpaceGrid grid{1};
    TimeGrid time{2, 1.0};
    SourceTerm load;
    SourceTerm heat;
    InitialData init;
};

}  // namespace teinv
