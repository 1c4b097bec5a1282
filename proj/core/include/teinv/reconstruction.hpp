#pragma once
// Iterative reconstruction drivers: Landweber relaxation, steepest descent and
// Fletcher-Reeves conjugate gradient with exact line search, for all three
// measurement kinds and both gradient types.

#include <optional>
#include <vector>

#include "teinv/gradient.hpp"

namespace teinv {

enum class Method { Landweber, SteepestDescent, ConjugateGradient };
enum class GradientType { L2, Sobolev };

struct ReconstructionConfig {
    Method method = Method::Landweber;
    GradientType gradient = GradientType::L2;
    double alpha = 6.0;            // Landweber relaxation
    double beta = 0.0;             // Tikhonov weight
    int max_iterations = 200;
    double morozov_factor = 1.001; // r > 1
    double noise_level = 0.0;      // realized e; 0 disables the discrepancy stop
    Field initial_guess;
    SobolevWeights weights = SobolevWeights::constants(1.0, 0.01);
    std::optional<Field> truth;    // enables per-iteration relative errors
};

struct ReconstructionResult {
    Field reconstruction;  // f_K
    int iterations = 0;    // K
    bool diverged = false;
    std::vector<double> cost_history;         // length K+1
    std::vector<double> discrepancy_history;  // length K+1, last entry = data fidelity
    std::vector<double> error_history;        // empty without truth
    double data_fidelity = 0.0;               // ||apply(f_K) - remainder||
    double penalty = 0.0;                     // ||f_K||
    std::optional<double> rel_error;
};

/// Discrepancy stop: true iff e > 0 and discrepancy <= factor * e.
bool morozov_stop(double discrepancy, double factor, double noise_level);

/// Power iteration on the composition adjoint_gradient(apply(.)) from a fixed
/// start field; returns a lower estimate of the squared operator norm of the
/// measurement map, non-decreasing in the iteration count. The reciprocal is
/// the classical sufficient bound for the Landweber relaxation; the observed
/// divergence onset of the relaxed iteration sits near twice that value.
double operator_norm_estimate(const MeasurementOperator& op, int iterations);

ReconstructionResult landweber(const ReconstructionConfig& cfg, const Field& remainder,
                               const MeasurementOperator& op);
ReconstructionResult steepest_descent(const ReconstructionConfig& cfg, const Field& remainder,
                                      const MeasurementOperator& op);
ReconstructionResult conjugate_gradient(const ReconstructionConfig& cfg, const Field& remainder,
                                        const MeasurementOperator& op);

/// Dispatch on cfg.method.
ReconstructionResult reconstruct(const ReconstructionConfig& cfg, const Field& remainder,
                                 const MeasurementOperator& op);

}  // namespace teinv
