#pragma once
// Manufactured-solution benchmark, nondimensional coupling constants,
// end-to-end reconstruction runs and parameter sweeps.

#include <cstdint>
#include <string>
#include <vector>

#include "teinv/reconstruction.hpp"

namespace teinv {

enum class TargetSource { F0, F1 };  // x sin(2 pi x), optionally shifted by 0.2

/// Fully populated benchmark problem: closed-form state, sources derived from
/// it, the separable decomposition with the target profile factored out, and
/// the closed-form measurement for each kind.
struct ManufacturedCase {
    TargetSource target = TargetSource::F0;
    MeasurementKind kind = MeasurementKind::TimeAvgDisplacement;
    double horizon = 1.0;

    MaterialParams params;
    Kernel kernel{0.01, 2.0};

    SpaceTimeFn exact_displacement;
    SpaceTimeFn exact_temperature;
    SpaceTimeFn load;         // full p
    SpaceTimeFn heat;         // full h
    TimeFn modulation;        // g
    std::function<double(double)> target_profile;  // f to be recovered
    SpaceTimeFn known_load;   // load seen by the known-data subproblem
    SpaceTimeFn known_heat;   // heat source seen by the known-data subproblem
    std::function<double(double)> exact_measurement;

    std::function<double(double)> initial_displacement;
    std::function<double(double)> initial_velocity;
    std::function<double(double)> initial_temperature;

    InitialData initial(const SpaceGrid& grid) const;
};

ManufacturedCase build_case(TargetSource target, MeasurementKind kind, double horizon = 1.0,
                            Kernel kernel = Kernel(0.01, 2.0));

/// Physical constants entering the nondimensional coupling strength.
struct PhysicalConstants {
    double shear_modulus = 4.8e10;       // N/m^2
    double poisson_ratio = 0.34;
    double thermal_expansion = 1.65e-5;  // 1/K
    double density = 8960.0;             // kg/m^3
    double specific_heat = 385.0;        // J/(kg K)
    double ref_temperature = 293.0;      // K
};

struct CouplingConstants {
    double epsilon;     // gamma^2 T0 / (rho^2 C_s c1^2)
    double gamma;       // 2 G alpha_T (1+nu)/(1-2nu)
    double lambda;
    double mu;
    double wave_speed;  // c1 = sqrt((lambda + 2 mu)/rho)
};

/// Derives the nondimensional coupling epsilon and the intermediate constants.
CouplingConstants nondimensional_epsilon(const PhysicalConstants& c);

struct RunConfig {
    int space_cells = 50;
    int time_steps = 50;
    double horizon = 1.0;
    int fine_cells = 1000;  // noise is generated on this grid, then restricted

    TargetSource target = TargetSource::F0;
    MeasurementKind kind = MeasurementKind::TimeAvgDisplacement;
    double kernel_amplitude = 0.01;  // memory kernel a exp(-b t)
    double kernel_decay = 2.0;
    double noise = 0.0;     // fraction, e.g. 0.01 for 1%
    std::uint64_t seed = kDefaultSeed;

    Method method = Method::Landweber;
    GradientType gradient = GradientType::L2;
    double alpha = 6.0;
    double beta = 0.0;
    double weight_r0 = 1.0;
    double weight_r1 = 0.01;
    int max_iterations = 200;
    double morozov_factor = 1.001;

    std::string out_dir;  // empty: no files written

    static constexpr std::uint64_t kDefaultSeed = 12;
};

/// One line of the summary table (the long-format sweep CSV row).
struct SummaryRow {
    std::string method;
    std::string gradient;
    std::string isp;
    std::string target;
    double noise = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    std::uint64_t seed = 0;
    double realized_noise = 0.0;
    int iterations = 0;
    double rel_error = 0.0;
    double data_fidelity = 0.0;
    double penalty = 0.0;
    bool diverged = false;
};

struct RunOutput {
    SummaryRow row;
    ReconstructionResult result;
    double realized_noise = 0.0;
};

/// Solves the known-data subproblem, forms the (possibly noisy) measurement
/// remainder, runs the configured method and scores the reconstruction
/// against the exact target. Deterministic for a fixed seed; emits CSV and
/// metadata files when cfg.out_dir is set.
RunOutput run_reconstruction(const RunConfig& cfg);

enum class SweepParam { Alpha, Beta, Noise };

/// One reconstruction per grid value, overriding the chosen parameter.
/// Points run concurrently on up to `workers` threads; failures are recorded
/// as divergent rows and the sweep continues. Rows keep grid order.
std::vector<SummaryRow> run_sweep(const RunConfig& base, SweepParam param,
                                  const std::vector<double>& values, int workers = 1);

std::string to_string(Method m);
std::string to_string(GradientType g);
std::string to_string(MeasurementKind k);
std::string to_string(TargetSource t);

}  // namespace teinv
