#include "teinv/gradient.hpp"

#include <algorithm>
#include <cmath>

#include "step_detail.hpp"
#include "teinv/p1.hpp"

namespace teinv {

MeasurementOperator::MeasurementOperator(MaterialParams params, SpaceGrid grid, TimeGrid time,
                                         Kernel kernel, TimeFn modulation, MeasurementKind kind)
    : forward_(params, grid, time, kernel),
      adjoint_(params, grid, time, kernel),
      modulation_(std::move(modulation)),
      kind_(kind) {}

Field MeasurementOperator::apply(const Field& f) const {
    const ForwardSolution sol = forward_.solve_source_only(modulation_, f, source_slot(kind_));
    return apply_measurement(sol, kind_);
}

Field MeasurementOperator::adjoint_gradient(const Field& residual) const {
    AdjointSpec spec = adjoint_.blank_spec();
    switch (kind_) {
        case MeasurementKind::FinalDisplacement:
            spec.terminal_velocity = residual;
            break;
        case MeasurementKind::TimeAvgDisplacement:
            spec.load_forcing = SourceTerm::constant_in_time(residual);
            break;
        case MeasurementKind::TimeAvgTemperature:
            spec.heat_forcing = SourceTerm::constant_in_time(residual);
            break;
    }
    const AdjointSolution sol = adjoint_.solve(spec);
    const Trajectory& state =
        kind_ == MeasurementKind::TimeAvgTemperature ? sol.temperature : sol.displacement;

    Trajectory weighted{state.time, state.levels};
    for (int j = 0; j <= state.time.steps; ++j)
        weighted.levels[static_cast<size_t>(j)] *= modulation_(state.time.node(j));
    Field grad = simpson_time_integral(weighted);
    if (kind_ == MeasurementKind::FinalDisplacement) grad *= -1.0 / forward_.params().rho;
    return grad;
}

double cost(const Field& f, const CostConfig& cfg, const MeasurementOperator& op) {
    Field residual = op.apply(f);
    residual -= cfg.remainder;
    double value = 0.5 * inner_l2(residual, residual);
    if (cfg.beta > 0.0) value += 0.5 * cfg.beta * inner_l2(f, f);
    return value;
}

Field grad_l2(const Field& f, const CostConfig& cfg, const MeasurementOperator& op) {
    Field residual = op.apply(f);
    residual -= cfg.remainder;
    Field grad = op.adjoint_gradient(residual);
    if (cfg.beta != 0.0) grad += cfg.beta * f;
    return grad;
}

SobolevWeights SobolevWeights::constants(double r0, double r1) {
    if (!(r0 > 0.0) || !(r1 > 0.0))
        throw std::invalid_argument("SobolevWeights: weights must be strictly positive");
    return SobolevWeights{[r0](double) { return r0; }, [r1](double) { return r1; }};
}

BandedMatrix assemble_elliptic(const SobolevWeights& weights, const SpaceGrid& grid) {
    const int n = grid.cells;
    const double h = grid.spacing();
    const double inv_h2 = 1.0 / (h * h);

    const auto r1_at = [&](double x) {
        const double v = weights.stiffness_weight(std::clamp(x, 0.0, 1.0));
        if (!(v > 0.0)) throw std::invalid_argument("assemble_elliptic: nonpositive r1 sample");
        return v;
    };
    const auto r0_at = [&](double x) {
        const double v = weights.mass_weight(x);
        if (!(v > 0.0)) throw std::invalid_argument("assemble_elliptic: nonpositive r0 sample");
        return v;
    };

    BandedMatrix a(n + 1, 1, 1);
    {
        const double fold = r1_at(h / 2.0) + r1_at(-h / 2.0);
        a.at(0, 0) = fold * inv_h2 + r0_at(0.0);
        a.at(0, 1) = -fold * inv_h2;
    }
    for (int i = 1; i < n; ++i) {
        const double x = grid.node(i);
        const double left = r1_at(x - h / 2.0);
        const double right = r1_at(x + h / 2.0);
        a.at(i, i - 1) = -left * inv_h2;
        a.at(i, i) = (left + right) * inv_h2 + r0_at(x);
        a.at(i, i + 1) = -right * inv_h2;
    }
    {
        const double fold = r1_at(1.0 - h / 2.0) + r1_at(1.0 + h / 2.0);
        a.at(n, n - 1) = -fold * inv_h2;
        a.at(n, n) = fold * inv_h2 + r0_at(1.0);
    }
    return a;
}

Field grad_sobolev(const Field& l2_gradient, const SobolevWeights& weights) {
    if (!l2_gradient.all_finite())
        throw std::invalid_argument("grad_sobolev: non-finite load");
    const BandedMatrix a = assemble_elliptic(weights, l2_gradient.grid());
    const BandedLU lu(a);
    const std::vector<double> x = lu.solve(l2_gradient.values());

    const std::vector<double> ax = a.apply(x);
    double res2 = 0.0, scale2 = 0.0;
    for (size_t i = 0; i < ax.size(); ++i) {
        const double r = ax[i] - l2_gradient.values()[i];
        res2 += r * r;
        scale2 += l2_gradient.values()[i] * l2_gradient.values()[i] + ax[i] * ax[i];
    }
    if (std::sqrt(res2) > 1e-12 * (std::sqrt(scale2) + 1e-300) + 1e-280)
        throw std::runtime_error("grad_sobolev: elliptic solve residual exceeded tolerance");

    return Field(l2_gradient.grid(), x);
}

double optimal_step(const Field& residual, const Field& image_dir, const Field& f,
                    const Field& dir, double beta) {
    const double denom = inner_l2(image_dir, image_dir) + beta * inner_l2(dir, dir);
    if (!(denom > 0.0))
        throw std::invalid_argument("optimal_step: direction annihilated by the operator");
    return (inner_l2(residual, image_dir) + beta * inner_l2(f, dir)) / denom;
}

}  // namespace teinv
