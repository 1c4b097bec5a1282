#include "teinv/measurement.hpp"

#include <stdexcept>

#include "teinv/p1.hpp"
#include "teinv/rng.hpp"

namespace teinv {

SourceSlot source_slot(MeasurementKind kind) {
    return kind == MeasurementKind::TimeAvgTemperature ? SourceSlot::Heat : SourceSlot::Load;
}

Field apply_measurement(const ForwardSolution& sol, MeasurementKind kind) {
    switch (kind) {
        case MeasurementKind::FinalDisplacement:
            return sol.displacement.levels.back();
        case MeasurementKind::TimeAvgDisplacement:
            return simpson_time_integral(sol.displacement);
        case MeasurementKind::TimeAvgTemperature:
            return simpson_time_integral(sol.temperature);
    }
    throw std::logic_error("apply_measurement: unknown kind");
}

Field compute_remainder(const Field& measured, const ForwardSolution& star_solution,
                        MeasurementKind kind) {
    Field captured = apply_measurement(star_solution, kind);
    require_same_grid(measured, captured, "compute_remainder");
    Field r = measured;
    r -= captured;
    return r;
}

NoisyField add_noise(const Field& exact_fine, double level, std::uint64_t seed,
                     SpaceGrid working) {
    if (level < 0.0) throw std::invalid_argument("add_noise: negative noise level");
    const Field exact_working = project_fine_to_working(exact_fine, working);
    if (level == 0.0) return NoisyField{exact_working, 0.0};

    const double sigma = level * max_abs(exact_fine);
    GaussianSampler gauss(seed);
    Field noisy = exact_fine;
    for (int i = 0; i < noisy.size(); ++i) noisy[i] += sigma * gauss.next();

    Field noisy_working = project_fine_to_working(noisy, working);
    Field diff = noisy_working;
    diff -= exact_working;
    return NoisyField{std::move(noisy_working), norm_l2(diff)};
}

}  // namespace teinv
