#pragma once
// Measurement functionals of the state, remainder computation against the
// known-data subproblem, and the additive Gaussian noise model.

#include <cstdint>
#include <optional>

#include "teinv/problem.hpp"

namespace teinv {

enum class MeasurementKind {
    FinalDisplacement,    // u(., T)
    TimeAvgDisplacement,  // integral of u over (0, T)
    TimeAvgTemperature,   // integral of theta over (0, T)
};

/// Which source slot the unknown spatial profile occupies for this kind.
SourceSlot source_slot(MeasurementKind kind);

struct Measurement {
    MeasurementKind kind = MeasurementKind::TimeAvgDisplacement;
    Field data;
    double requested_noise = 0.0;  // requested fraction (0.01 for 1%)
    double noise_level = 0.0;      // realized L2 distance to the clean data
    std::optional<std::uint64_t> seed;
};

Field apply_measurement(const ForwardSolution& sol, MeasurementKind kind);

/// measured - (same functional of the known-data solve).
Field compute_remainder(const Field& measured, const ForwardSolution& star_solution,
                        MeasurementKind kind);

struct NoisyField {
    Field field;             // on the working grid
    double realized_error;   // discrete L2 distance to the clean working-grid data
};

/// Adds i.i.d. zero-mean Gaussian noise with sigma = level * max|exact| at the
/// fine-grid nodes, then restricts to the working grid. Deterministic for a
/// fixed seed. `level` is a fraction (0.01 for 1%).
NoisyField add_noise(const Field& exact_fine, double level, std::uint64_t seed,
                     SpaceGrid working);

}  // namespace teinv
