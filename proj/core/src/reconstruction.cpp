#include "teinv/reconstruction.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "teinv/p1.hpp"

namespace teinv {

namespace {

constexpr double kDivergenceGuard = 1e6;

void validate_common(const ReconstructionConfig& cfg, const Field& remainder,
                     const MeasurementOperator& op) {
    if (!(op.grid() == remainder.grid()))
        throw std::invalid_argument("reconstruct: remainder grid does not match operator grid");
    if (!(op.grid() == cfg.initial_guess.grid()))
        throw std::invalid_argument("reconstruct: initial guess grid does not match operator grid");
    if (cfg.max_iterations < 1) throw std::invalid_argument("reconstruct: max_iterations < 1");
    if (!(cfg.morozov_factor > 1.0))
        throw std::invalid_argument("reconstruct: morozov factor must exceed 1");
    if (cfg.noise_level < 0.0) throw std::invalid_argument("reconstruct: negative noise level");
    if (cfg.truth && !(cfg.truth->grid() == op.grid()))
        throw std::invalid_argument("reconstruct: truth grid does not match operator grid");
}

double relative_error(const Field& truth, const Field& f) {
    Field diff = truth;
    diff -= f;
    return norm_l2(diff) / norm_l2(truth);
}

void push_history(ReconstructionResult& res, const ReconstructionConfig& cfg, double cost_value,
                  double discrepancy, const Field& iterate) {
    res.cost_history.push_back(cost_value);
    res.discrepancy_history.push_back(discrepancy);
    if (cfg.truth) res.error_history.push_back(relative_error(*cfg.truth, iterate));
}

void finalize(ReconstructionResult& res, const Field& f, int iterations,
              const ReconstructionConfig& cfg) {
    res.reconstruction = f;
    res.iterations = iterations;
    res.data_fidelity = res.discrepancy_history.back();
    res.penalty = norm_l2(f);
    if (cfg.truth) res.rel_error = relative_error(*cfg.truth, f);
}

}  // namespace

bool morozov_stop(double discrepancy, double factor, double noise_level) {
    return noise_level > 0.0 && discrepancy <= factor * noise_level;
}

double operator_norm_estimate(const MeasurementOperator& op, int iterations) {
    if (iterations < 1) throw std::invalid_argument("operator_norm_estimate: iterations < 1");
    Field z = sample_field(op.grid(), [](double x) { return std::sin(std::numbers::pi * x); });
    double estimate = 0.0;
    for (int it = 0; it < iterations; ++it) {
        const Field w = op.adjoint_gradient(op.apply(z));
        const double zz = inner_l2(z, z);
        if (!(zz > 0.0)) break;
        // Rayleigh quotient of the (nearly symmetric) composition; the running
        // maximum keeps the estimate a monotone lower bound.
        estimate = std::max(estimate, inner_l2(w, z) / zz);
        const double wn = norm_l2(w);
        if (!(wn > 0.0)) break;
        z = (1.0 / wn) * w;
    }
    return estimate;
}

// Successive approximation f <- f - alpha * Op(Op(f) - remainder), where both
// operator applications are sensitivity solves (two per iteration, no adjoint).
ReconstructionResult landweber(const ReconstructionConfig& cfg, const Field& remainder,
                               const MeasurementOperator& op) {
    validate_common(cfg, remainder, op);
    if (!(cfg.alpha > 0.0)) throw std::invalid_argument("landweber: alpha must be positive");

    ReconstructionResult res;
    Field f = cfg.initial_guess;
    Field image = op.apply(f);
    Field residual = image;
    residual -= remainder;
    double discrepancy = norm_l2(residual);
    push_history(res, cfg, 0.5 * discrepancy * discrepancy, discrepancy, f);

    const double fit_floor = 1e-15 * (1.0 + norm_l2(remainder));
    int k = 0;
    while (true) {
        if (morozov_stop(discrepancy, cfg.morozov_factor, cfg.noise_level)) break;
        if (discrepancy <= fit_floor) break;  // fixed point reached
        if (k >= cfg.max_iterations) break;

        const Field update = op.apply(residual);
        Field f_next = f;
        f_next -= cfg.alpha * update;
        if (!f_next.all_finite() || norm_l2(f_next) > kDivergenceGuard) {
            res.diverged = true;
            break;
        }

        f = std::move(f_next);
        image = op.apply(f);
        residual = image;
        residual -= remainder;
        discrepancy = norm_l2(residual);
        ++k;
        push_history(res, cfg, 0.5 * discrepancy * discrepancy, discrepancy, f);
    }

    finalize(res, f, k, cfg);
    return res;
}

namespace {

struct GradientEval {
    Field gradient;  // search gradient (L2 or Sobolev-smoothed)
    Field residual;  // apply(f) - remainder
    double cost = 0.0;
    double discrepancy = 0.0;
};

GradientEval evaluate(const Field& f, const Field& remainder, const ReconstructionConfig& cfg,
                      const MeasurementOperator& op) {
    GradientEval ev;
    ev.residual = op.apply(f);
    ev.residual -= remainder;
    ev.discrepancy = norm_l2(ev.residual);
    ev.cost = 0.5 * ev.discrepancy * ev.discrepancy;
    if (cfg.beta > 0.0) ev.cost += 0.5 * cfg.beta * inner_l2(f, f);

    ev.gradient = op.adjoint_gradient(ev.residual);
    if (cfg.beta != 0.0) ev.gradient += cfg.beta * f;
    if (cfg.gradient == GradientType::Sobolev) ev.gradient = grad_sobolev(ev.gradient, cfg.weights);
    return ev;
}

// Shared descent loop. Steepest descent always takes the negative gradient;
// the conjugate variant combines it with the previous direction through the
// Fletcher-Reeves coefficient. The first conjugate step therefore coincides
// with a steepest-descent step. Iterations stop when the freshly evaluated
// cost increases (previous iterate retained) or at the iteration cap.
ReconstructionResult descend(const ReconstructionConfig& cfg, const Field& remainder,
                             const MeasurementOperator& op, bool conjugate) {
    validate_common(cfg, remainder, op);

    ReconstructionResult res;
    Field f = cfg.initial_guess;
    GradientEval ev = evaluate(f, remainder, cfg, op);
    push_history(res, cfg, ev.cost, ev.discrepancy, f);

    Field direction(op.grid());
    double prev_steepest_norm2 = 0.0;
    int k = 0;
    for (int n = 0; n < cfg.max_iterations; ++n) {
        Field steepest = -1.0 * ev.gradient;
        const double steepest_norm2 = inner_l2(steepest, steepest);
        if (conjugate && n > 0) {
            if (!(prev_steepest_norm2 > 0.0)) break;  // previous gradient vanished
            const double fletcher_reeves = steepest_norm2 / prev_steepest_norm2;
            direction = steepest + fletcher_reeves * direction;
        } else {
            direction = steepest;
        }
        prev_steepest_norm2 = steepest_norm2;

        const Field image_dir = op.apply(direction);
        const double denom =
            inner_l2(image_dir, image_dir) + cfg.beta * inner_l2(direction, direction);
        if (!(denom > 0.0)) break;  // direction annihilated: converged
        const double step =
            -(inner_l2(ev.residual, image_dir) + cfg.beta * inner_l2(f, direction)) / denom;

        Field f_next = f;
        f_next += step * direction;
        GradientEval ev_next = evaluate(f_next, remainder, cfg, op);
        if (ev_next.cost > ev.cost) break;  // retain the previous iterate

        f = std::move(f_next);
        ev = std::move(ev_next);
        ++k;
        push_history(res, cfg, ev.cost, ev.discrepancy, f);
    }

    finalize(res, f, k, cfg);
    return res;
}

}  // namespace

ReconstructionResult steepest_descent(const ReconstructionConfig& cfg, const Field& remainder,
                                      const MeasurementOperator& op) {
    return descend(cfg, remainder, op, false);
}

ReconstructionResult conjugate_gradient(const ReconstructionConfig& cfg, const Field& remainder,
                                        const MeasurementOperator& op) {
    return descend(cfg, remainder, op, true);
}

ReconstructionResult reconstruct(const ReconstructionConfig& cfg, const Field& remainder,
                                 const MeasurementOperator& op) {
    switch (cfg.method) {
        case Method::Landweber:
            return landweber(cfg, remainder, op);
        case Method::SteepestDescent:
            return steepest_descent(cfg, remainder, op);
        case Method::ConjugateGradient:
            return conjugate_gradient(cfg, remainder, op);
    }
    throw std::logic_error("reconstruct: unknown method");
}

}  // namespace teinv
