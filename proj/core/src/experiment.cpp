#include "teinv/experiment.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "teinv/csv.hpp"
#include "teinv/p1.hpp"

namespace teinv {

namespace {
constexpr double kPi = std::numbers::pi;
}

InitialData ManufacturedCase::initial(const SpaceGrid& grid) const {
    return InitialData{sample_field(grid, initial_displacement),
                       sample_field(grid, initial_velocity),
                       sample_field(grid, initial_temperature)};
}

ManufacturedCase build_case(TargetSource target, MeasurementKind kind, double horizon,
                            Kernel kernel) {
    ManufacturedCase c;
    c.target = target;
    c.kind = kind;
    c.horizon = horizon;

    c.params = MaterialParams{};
    c.params.rho = 1.0;
    c.params.specific_heat = 1.0;
    c.params.conductivity = 1.0;
    c.params.lambda = 1.0;
    c.params.mu = 0.0;
    c.params.coupling = 1.0;
    c.params.ref_temperature = 0.0189;  // nondimensional coupling strength
    c.kernel = kernel;

    c.exact_displacement = [](double x, double t) {
        return 0.1 * (t * t * t + t + 1.0) * (1.0 - std::cos(2.0 * kPi * x));
    };
    c.exact_temperature = [](double x, double t) {
        return 2.0 * (t * t + 1.0) * x * (1.0 - x) * (1.0 - x);
    };

    const MaterialParams mp = c.params;
    const double a = c.kernel.amplitude();
    const double b = c.kernel.decay_rate();

    // rho u_tt - (lambda + 2 mu) u_xx + gamma theta_x
    c.load = [mp](double x, double t) {
        const double wave = 1.0 - std::cos(2.0 * kPi * x);
        const double u_tt = 0.6 * t * wave;
        const double u_xx = 0.4 * kPi * kPi * (t * t * t + t + 1.0) * std::cos(2.0 * kPi * x);
        const double theta_x = 2.0 * (t * t + 1.0) * (1.0 - x) * (1.0 - 3.0 * x);
        return mp.rho * u_tt - (mp.lambda + 2.0 * mp.mu) * u_xx + mp.coupling * theta_x;
    };

    // rho C_s theta_t - kappa theta_xx - (k * theta_xx) + gamma T0 u_tx
    c.heat = [mp, a, b](double x, double t) {
        const double theta_t = 4.0 * t * x * (1.0 - x) * (1.0 - x);
        const double theta_xx_factor = 6.0 * x - 4.0;
        const double theta_xx = 2.0 * (t * t + 1.0) * theta_xx_factor;
        // closed-form convolution of k with theta_xx's time factor 2(t^2 + 1)
        const double tail = 2.0 / (b * b * b) + 1.0 / b;
        const double conv =
            2.0 * a * theta_xx_factor *
            ((t * t / b - 2.0 * t / (b * b) + tail) - std::exp(-b * t) * tail);
        const double u_tx = 0.2 * kPi * (3.0 * t * t + 1.0) * std::sin(2.0 * kPi * x);
        return mp.rho * mp.specific_heat * theta_t - mp.conductivity * theta_xx - conv +
               mp.coupling * mp.ref_temperature * u_tx;
    };

    c.modulation = [](double t) { return -0.4 * kPi * kPi * (t * t + t + 1.0); };

    const double shift = target == TargetSource::F1 ? 0.2 : 0.0;
    c.target_profile = [shift](double x) { return x * std::sin(2.0 * kPi * x) + shift; };

    const SpaceTimeFn load = c.load;
    const SpaceTimeFn heat = c.heat;
    const TimeFn g = c.modulation;
    const auto profile = c.target_profile;
    if (source_slot(kind) == SourceSlot::Load) {
        c.known_load = [load, g, profile](double x, double t) { return load(x, t) - g(t) * profile(x); };
        c.known_heat = heat;
    } else {
        c.known_load = load;
        c.known_heat = [heat, g, profile](double x, double t) { return heat(x, t) - g(t) * profile(x); };
    }

    const double T = horizon;
    switch (kind) {
        case MeasurementKind::FinalDisplacement:
            c.exact_measurement = [T](double x) {
                return 0.1 * (T * T * T + T + 1.0) * (1.0 - std::cos(2.0 * kPi * x));
            };
            break;
        case MeasurementKind::TimeAvgDisplacement:
            c.exact_measurement = [T](double x) {
                return 0.1 * (T * T * T * T / 4.0 + T * T / 2.0 + T) *
                       (1.0 - std::cos(2.0 * kPi * x));
            };
            break;
        case MeasurementKind::TimeAvgTemperature:
            c.exact_measurement = [T](double x) {
                return 2.0 * (T * T * T / 3.0 + T) * x * (1.0 - x) * (1.0 - x);
            };
            break;
    }

    c.initial_displacement = [](double x) { return 0.1 * (1.0 - std::cos(2.0 * kPi * x)); };
    c.initial_velocity = c.initial_displacement;
    c.initial_temperature = [](double x) { return 2.0 * x * (1.0 - x) * (1.0 - x); };
    return c;
}

CouplingConstants nondimensional_epsilon(const PhysicalConstants& c) {
    if (!(c.poisson_ratio > 0.0) || !(c.poisson_ratio < 0.5))
        throw std::invalid_argument("nondimensional_epsilon: Poisson ratio must lie in (0, 1/2)");
    if (!(c.shear_modulus > 0.0) || !(c.density > 0.0) || !(c.specific_heat > 0.0) ||
        !(c.thermal_expansion > 0.0) || c.ref_temperature < 0.0)
        throw std::invalid_argument("nondimensional_epsilon: constants must be positive");

    CouplingConstants out{};
    out.mu = c.shear_modulus;
    out.lambda = 2.0 * c.poisson_ratio * c.shear_modulus / (1.0 - 2.0 * c.poisson_ratio);
    out.gamma = 2.0 * c.shear_modulus * c.thermal_expansion * (1.0 + c.poisson_ratio) /
                (1.0 - 2.0 * c.poisson_ratio);
    const double c1_sq = (out.lambda + 2.0 * out.mu) / c.density;
    out.wave_speed = std::sqrt(c1_sq);
    out.epsilon = out.gamma * out.gamma * c.ref_temperature /
                  (c.density * c.density * c.specific_heat * c1_sq);
    return out;
}

std::string to_string(Method m) {
    switch (m) {
        case Method::Landweber: return "landweber";
        case Method::SteepestDescent: return "sd";
        case Method::ConjugateGradient: return "cg";
    }
    return "?";
}

std::string to_string(GradientType g) {
    return g == GradientType::L2 ? "l2" : "sobolev";
}

std::string to_string(MeasurementKind k) {
    switch (k) {
        case MeasurementKind::FinalDisplacement: return "1.1";
        case MeasurementKind::TimeAvgDisplacement: return "1.2";
        case MeasurementKind::TimeAvgTemperature: return "2";
    }
    return "?";
}

std::string to_string(TargetSource t) { return t == TargetSource::F0 ? "f0" : "f1"; }

RunOutput run_reconstruction(const RunConfig& cfg) {
    if (cfg.fine_cells % cfg.space_cells != 0)
        throw std::invalid_argument("run_reconstruction: fine grid must resolve the working grid");
    const SpaceGrid grid(cfg.space_cells);
    const TimeGrid tgrid(cfg.time_steps, cfg.horizon);
    const ManufacturedCase mc = build_case(cfg.target, cfg.kind, cfg.horizon,
                                           Kernel(cfg.kernel_amplitude, cfg.kernel_decay));

    // Known-data subproblem: everything except the sought source term.
    ForwardSolver solver(mc.params, grid, tgrid, mc.kernel);
    const ForwardSolution star = solver.solve(SourceTerm::of(mc.known_load),
                                              SourceTerm::of(mc.known_heat), mc.initial(grid));

    Measurement measurement;
    measurement.kind = cfg.kind;
    measurement.requested_noise = cfg.noise;
    if (cfg.noise > 0.0) {
        const Field fine = sample_field(SpaceGrid(cfg.fine_cells), mc.exact_measurement);
        NoisyField noisy = add_noise(fine, cfg.noise, cfg.seed, grid);
        measurement.data = std::move(noisy.field);
        measurement.noise_level = noisy.realized_error;
        measurement.seed = cfg.seed;
    } else {
        measurement.data = sample_field(grid, mc.exact_measurement);
    }

    const Field remainder = compute_remainder(measurement.data, star, cfg.kind);
    const MeasurementOperator op(mc.params, grid, tgrid, mc.kernel, mc.modulation, cfg.kind);

    ReconstructionConfig rc;
    rc.method = cfg.method;
    rc.gradient = cfg.gradient;
    rc.alpha = cfg.alpha;
    rc.beta = cfg.beta;
    rc.max_iterations = cfg.max_iterations;
    rc.morozov_factor = cfg.morozov_factor;
    rc.noise_level = measurement.noise_level;
    rc.initial_guess = Field(grid);
    rc.weights = SobolevWeights::constants(cfg.weight_r0, cfg.weight_r1);
    rc.truth = sample_field(grid, mc.target_profile);

    RunOutput out;
    out.result = reconstruct(rc, remainder, op);
    out.realized_noise = measurement.noise_level;

    SummaryRow& row = out.row;
    row.method = to_string(cfg.method);
    row.gradient = cfg.method == Method::Landweber ? "-" : to_string(cfg.gradient);
    row.isp = to_string(cfg.kind);
    row.target = to_string(cfg.target);
    row.noise = cfg.noise;
    row.alpha = cfg.alpha;
    row.beta = cfg.beta;
    row.seed = cfg.seed;
    row.realized_noise = measurement.noise_level;
    row.iterations = out.result.iterations;
    row.rel_error = out.result.rel_error.value_or(std::nan(""));
    row.data_fidelity = out.result.data_fidelity;
    row.penalty = out.result.penalty;
    row.diverged = out.result.diverged;

    if (!cfg.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.out_dir);
        const auto in_dir = [&](const std::string& name) {
            return (fs::path(cfg.out_dir) / name).string();
        };
        write_measurement(in_dir("measurement.csv"), in_dir("measurement.meta"), measurement);
        write_field_csv(in_dir("reconstruction.csv"), out.result.reconstruction);
        write_history_csv(in_dir("history.csv"), out.result);
        write_summary_csv(in_dir("summary.csv"), {row});

        std::vector<std::pair<std::string, std::string>> meta;
        meta.emplace_back("isp", row.isp);
        meta.emplace_back("target", row.target);
        meta.emplace_back("method", row.method);
        meta.emplace_back("gradient", row.gradient);
        meta.emplace_back("space_cells", std::to_string(cfg.space_cells));
        meta.emplace_back("time_steps", std::to_string(cfg.time_steps));
        meta.emplace_back("horizon", format_full(cfg.horizon));
        meta.emplace_back("alpha", format_full(cfg.alpha));
        meta.emplace_back("beta", format_full(cfg.beta));
        meta.emplace_back("noise", format_full(cfg.noise));
        meta.emplace_back("seed", std::to_string(cfg.seed));
        meta.emplace_back("realized_noise", format_full(measurement.noise_level));
        meta.emplace_back("iterations", std::to_string(out.result.iterations));
        meta.emplace_back("diverged", out.result.diverged ? "1" : "0");
        write_metadata(in_dir("run.meta"), meta);
    }
    return out;
}

std::vector<SummaryRow> run_sweep(const RunConfig& base, SweepParam param,
                                  const std::vector<double>& values, int workers) {
    if (values.empty()) throw std::invalid_argument("run_sweep: empty parameter grid");
    std::vector<SummaryRow> rows(values.size());

    const auto run_point = [&](size_t idx) {
        RunConfig cfg = base;
        switch (param) {
            case SweepParam::Alpha: cfg.alpha = values[idx]; break;
            case SweepParam::Beta: cfg.beta = values[idx]; break;
            case SweepParam::Noise: cfg.noise = values[idx]; break;
        }
        if (!base.out_dir.empty()) {
            std::string tag;
            switch (param) {
                case SweepParam::Alpha: tag = "alpha_"; break;
                case SweepParam::Beta: tag = "beta_"; break;
                case SweepParam::Noise: tag = "noise_"; break;
            }
            cfg.out_dir = (std::filesystem::path(base.out_dir) / (tag + std::to_string(idx))).string();
        }
        try {
            rows[idx] = run_reconstruction(cfg).row;
        } catch (const std::exception&) {
            SummaryRow& row = rows[idx];
            row.method = to_string(cfg.method);
            row.gradient = cfg.method == Method::Landweber ? "-" : to_string(cfg.gradient);
            row.isp = to_string(cfg.kind);
            row.target = to_string(cfg.target);
            row.noise = cfg.noise;
            row.alpha = cfg.alpha;
            row.beta = cfg.beta;
            row.seed = cfg.seed;
            row.rel_error = std::nan("");
            row.data_fidelity = std::nan("");
            row.penalty = std::nan("");
            row.diverged = true;
        }
    };

    const int pool = std::max(1, std::min<int>(workers, static_cast<int>(values.size())));
    if (pool == 1) {
        for (size_t i = 0; i < values.size(); ++i) run_point(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> threads;
        threads.reserve(static_cast<size_t>(pool));
        for (int w = 0; w < pool; ++w) {
            threads.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < values.size(); i = next.fetch_add(1))
                    run_point(i);
            });
        }
        for (auto& t : threads) t.join();
    }

    if (!base.out_dir.empty()) {
        std::filesystem::create_directories(base.out_dir);
        write_summary_csv((std::filesystem::path(base.out_dir) / "sweep.csv").string(), rows);
    }
    return rows;
}

}  // namespace teinv
