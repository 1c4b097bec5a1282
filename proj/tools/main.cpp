// Command-line front end: forward solves, single reconstructions, parameter
// sweeps, noisy measurement generation and the nondimensional constants.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "teinv/csv.hpp"
#include "teinv/experiment.hpp"
#include "teinv/p1.hpp"

namespace {

using namespace teinv;

constexpr int kExitValidation = 2;
constexpr int kExitDiverged = 3;

MeasurementKind parse_isp(const std::string& s) {
    if (s == "1.1") return MeasurementKind::FinalDisplacement;
    if (s == "1.2") return MeasurementKind::TimeAvgDisplacement;
    if (s == "2") return MeasurementKind::TimeAvgTemperature;
    throw std::invalid_argument("--isp must be one of 1.1, 1.2, 2");
}

Method parse_method(const std::string& s) {
    if (s == "landweber") return Method::Landweber;
    if (s == "sd") return Method::SteepestDescent;
    if (s == "cg") return Method::ConjugateGradient;
    throw std::invalid_argument("--method must be one of landweber, sd, cg");
}

GradientType parse_gradient(const std::string& s) {
    if (s == "l2") return GradientType::L2;
    if (s == "sobolev") return GradientType::Sobolev;
    throw std::invalid_argument("--gradient must be l2 or sobolev");
}

TargetSource parse_target(const std::string& s) {
    if (s == "f0") return TargetSource::F0;
    if (s == "f1") return TargetSource::F1;
    throw std::invalid_argument("--target must be f0 or f1");
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

// Plain-text configuration: `key = value` lines with the same keys as the
// long CLI flags (isp, target, method, gradient, alpha, beta, noise, seed,
// nx, nt, horizon, r0, r1, max-iter, morozov-r, out). Flags given on the
// command line override the file.
struct CliOptions {
    std::string isp = "1.2";
    std::string target = "f0";
    std::string method = "landweber";
    std::string gradient = "l2";
    double alpha = 6.0;
    double beta = 0.0;
    double noise = 0.0;
    std::uint64_t seed = RunConfig::kDefaultSeed;
    int nx = 50;
    int nt = 50;
    int fine_cells = 1000;
    double horizon = 1.0;
    double r0 = 1.0;
    double r1 = 0.01;
    double kernel_a = 0.01;
    double kernel_b = 2.0;
    int max_iter = 200;
    double morozov_r = 1.001;
    std::string out;
};

void apply_config_file(const std::string& path, CliOptions& o) {
    const auto kv = read_metadata(path);
    const auto get = [&](const char* key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (const auto* v = get("isp")) o.isp = *v;
    if (const auto* v = get("target")) o.target = *v;
    if (const auto* v = get("method")) o.method = *v;
    if (const auto* v = get("gradient")) o.gradient = *v;
    if (const auto* v = get("alpha")) o.alpha = std::stod(*v);
    if (const auto* v = get("beta")) o.beta = std::stod(*v);
    if (const auto* v = get("noise")) o.noise = std::stod(*v);
    if (const auto* v = get("seed")) o.seed = std::stoull(*v);
    if (const auto* v = get("nx")) o.nx = std::stoi(*v);
    if (const auto* v = get("nt")) o.nt = std::stoi(*v);
    if (const auto* v = get("fine-cells")) o.fine_cells = std::stoi(*v);
    if (const auto* v = get("horizon")) o.horizon = std::stod(*v);
    if (const auto* v = get("r0")) o.r0 = std::stod(*v);
    if (const auto* v = get("r1")) o.r1 = std::stod(*v);
    if (const auto* v = get("kernel-a")) o.kernel_a = std::stod(*v);
    if (const auto* v = get("kernel-b")) o.kernel_b = std::stod(*v);
    if (const auto* v = get("max-iter")) o.max_iter = std::stoi(*v);
    if (const auto* v = get("morozov-r")) o.morozov_r = std::stod(*v);
    if (const auto* v = get("out")) o.out = *v;
}

RunConfig to_run_config(const CliOptions& o) {
    RunConfig cfg;
    cfg.space_cells = o.nx;
    cfg.time_steps = o.nt;
    cfg.fine_cells = o.fine_cells;
    cfg.horizon = o.horizon;
    cfg.target = parse_target(o.target);
    cfg.kind = parse_isp(o.isp);
    cfg.noise = o.noise;
    cfg.seed = o.seed;
    cfg.method = parse_method(o.method);
    cfg.gradient = parse_gradient(o.gradient);
    cfg.alpha = o.alpha;
    cfg.beta = o.beta;
    cfg.weight_r0 = o.r0;
    cfg.weight_r1 = o.r1;
    cfg.kernel_amplitude = o.kernel_a;
    cfg.kernel_decay = o.kernel_b;
    cfg.max_iterations = o.max_iter;
    cfg.morozov_factor = o.morozov_r;
    cfg.out_dir = o.out;
    return cfg;
}

void add_common_options(CLI::App* cmd, CliOptions& o, std::string& config_path) {
    cmd->add_option("--config", config_path, "configuration file (key = value lines)");
    cmd->add_option("--isp", o.isp, "inverse problem: 1.1, 1.2 or 2");
    cmd->add_option("--target", o.target, "target source: f0 or f1");
    cmd->add_option("--nx", o.nx, "spatial cells of the working grid");
    cmd->add_option("--nt", o.nt, "time steps (even)");
    cmd->add_option("--horizon", o.horizon, "final time");
    cmd->add_option("--noise", o.noise, "noise level fraction (0.01 = 1%)");
    cmd->add_option("--seed", o.seed, "noise seed");
    cmd->add_option("--fine-cells", o.fine_cells, "fine grid for noise generation");
    cmd->add_option("--kernel-a", o.kernel_a, "memory kernel amplitude");
    cmd->add_option("--kernel-b", o.kernel_b, "memory kernel decay rate");
    cmd->add_option("--out", o.out, "output directory");
}

int cmd_forward(const CliOptions& o) {
    const RunConfig cfg = to_run_config(o);
    const ManufacturedCase mc =
        build_case(cfg.target, cfg.kind, cfg.horizon, Kernel(cfg.kernel_amplitude, cfg.kernel_decay));
    const SpaceGrid grid(cfg.space_cells);
    const TimeGrid tgrid(cfg.time_steps, cfg.horizon);
    ForwardSolver solver(mc.params, grid, tgrid, mc.kernel);
    const ForwardSolution sol =
        solver.solve(SourceTerm::of(mc.load), SourceTerm::of(mc.heat), mc.initial(grid));
    const Field measured = apply_measurement(sol, cfg.kind);

    if (cfg.out_dir.empty()) {
        std::cout << "final-time |u|: " << format_full(norm_l2(sol.displacement.levels.back()))
                  << "\nmeasured |.|: " << format_full(norm_l2(measured)) << '\n';
        return 0;
    }
    std::filesystem::create_directories(cfg.out_dir);
    const auto in_dir = [&](const std::string& name) {
        return (std::filesystem::path(cfg.out_dir) / name).string();
    };
    write_trajectory_csv(in_dir("trajectory.csv"), sol);
    write_field_csv(in_dir("measurement.csv"), measured);
    std::cout << "wrote " << in_dir("trajectory.csv") << " and " << in_dir("measurement.csv")
              << '\n';
    return 0;
}

int cmd_reconstruct(const CliOptions& o) {
    const RunOutput out = run_reconstruction(to_run_config(o));
    std::cout << "# schema=" << kSummarySchema << '\n'
              << "method,gradient,isp,target,noise,alpha,beta,seed,realized_noise,K,e_r,DF,P,diverged\n"
              << summary_row_line(out.row) << '\n';
    return out.result.diverged ? kExitDiverged : 0;
}

int cmd_sweep(const CliOptions& o, const std::string& param, const std::string& values_csv,
              int workers) {
    SweepParam param_kind;
    if (param == "alpha") param_kind = SweepParam::Alpha;
    else if (param == "beta") param_kind = SweepParam::Beta;
    else if (param == "noise") param_kind = SweepParam::Noise;
    else throw CLI::ValidationError("--param must be alpha, beta or noise");

    const std::vector<double> values = parse_values(values_csv);
    const std::vector<SummaryRow> rows = run_sweep(to_run_config(o), param_kind, values, workers);
    std::cout << "# schema=" << kSummarySchema << '\n'
              << "method,gradient,isp,target,noise,alpha,beta,seed,realized_noise,K,e_r,DF,P,diverged\n";
    for (const SummaryRow& row : rows) std::cout << summary_row_line(row) << '\n';
    return 0;
}

int cmd_noise_gen(const CliOptions& o) {
    const RunConfig cfg = to_run_config(o);
    const ManufacturedCase mc =
        build_case(cfg.target, cfg.kind, cfg.horizon, Kernel(cfg.kernel_amplitude, cfg.kernel_decay));
    const Field fine = sample_field(SpaceGrid(cfg.fine_cells), mc.exact_measurement);
    const NoisyField noisy = add_noise(fine, cfg.noise, cfg.seed, SpaceGrid(cfg.space_cells));

    Measurement m;
    m.kind = cfg.kind;
    m.data = noisy.field;
    m.requested_noise = cfg.noise;
    m.noise_level = noisy.realized_error;
    m.seed = cfg.seed;

    const std::string dir = cfg.out_dir.empty() ? "." : cfg.out_dir;
    std::filesystem::create_directories(dir);
    const auto base = std::filesystem::path(dir) / "measurement";
    write_measurement(base.string() + ".csv", base.string() + ".meta", m);
    std::cout << "realized noise = " << format_full(noisy.realized_error) << '\n';
    return 0;
}

int cmd_epsilon(const PhysicalConstants& pc) {
    const CouplingConstants cc = nondimensional_epsilon(pc);
    std::cout << "epsilon = " << format_full(cc.epsilon) << '\n'
              << "gamma = " << format_full(cc.gamma) << '\n'
              << "lambda = " << format_full(cc.lambda) << '\n'
              << "mu = " << format_full(cc.mu) << '\n'
              << "wave_speed = " << format_full(cc.wave_speed) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D thermoelastic inverse source toolkit"};
    app.require_subcommand(1);

    CliOptions opts;
    std::string config_path;

    auto* forward = app.add_subcommand("forward", "solve the manufactured direct problem");
    add_common_options(forward, opts, config_path);

    auto* rec = app.add_subcommand("reconstruct", "run one reconstruction");
    add_common_options(rec, opts, config_path);
    rec->add_option("--method", opts.method, "landweber, sd or cg");
    rec->add_option("--gradient", opts.gradient, "l2 or sobolev");
    rec->add_option("--alpha", opts.alpha, "Landweber relaxation");
    rec->add_option("--beta", opts.beta, "Tikhonov weight");
    rec->add_option("--r0", opts.r0, "Sobolev mass weight");
    rec->add_option("--r1", opts.r1, "Sobolev stiffness weight");
    rec->add_option("--max-iter", opts.max_iter, "iteration cap");
    rec->add_option("--morozov-r", opts.morozov_r, "discrepancy factor r > 1");

    auto* sweep = app.add_subcommand("sweep", "one reconstruction per grid value");
    add_common_options(sweep, opts, config_path);
    std::string sweep_param = "alpha", sweep_values;
    int workers = 1;
    sweep->add_option("--method", opts.method, "landweber, sd or cg");
    sweep->add_option("--gradient", opts.gradient, "l2 or sobolev");
    sweep->add_option("--alpha", opts.alpha, "Landweber relaxation");
    sweep->add_option("--beta", opts.beta, "Tikhonov weight");
    sweep->add_option("--param", sweep_param, "swept parameter: alpha, beta or noise");
    sweep->add_option("--values", sweep_values, "comma-separated grid values")->required();
    sweep->add_option("--workers", workers, "concurrent sweep points");
    sweep->add_option("--max-iter", opts.max_iter, "iteration cap");

    auto* noise = app.add_subcommand("noise-gen", "generate a noisy measurement file");
    add_common_options(noise, opts, config_path);

    auto* eps = app.add_subcommand("epsilon", "nondimensional coupling constants");
    PhysicalConstants pc;
    eps->add_option("--shear-modulus", pc.shear_modulus, "shear modulus G [N/m^2]");
    eps->add_option("--poisson", pc.poisson_ratio, "Poisson ratio in (0, 1/2)");
    eps->add_option("--thermal-expansion", pc.thermal_expansion, "alpha_T [1/K]");
    eps->add_option("--density", pc.density, "rho [kg/m^3]");
    eps->add_option("--specific-heat", pc.specific_heat, "C_s [J/(kg K)]");
    eps->add_option("--ref-temperature", pc.ref_temperature, "T0 [K]");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) {
            // File values fill in every option not set on the command line.
            CliOptions file_opts;
            apply_config_file(config_path, file_opts);
            CLI::App* active = app.get_subcommands().front();
            const auto overridden = [&](const std::string& name) {
                const CLI::Option* opt = active->get_option_no_throw(name);
                return opt != nullptr && opt->count() > 0;
            };
            if (!overridden("--isp")) opts.isp = file_opts.isp;
            if (!overridden("--target")) opts.target = file_opts.target;
            if (!overridden("--method")) opts.method = file_opts.method;
            if (!overridden("--gradient")) opts.gradient = file_opts.gradient;
            if (!overridden("--alpha")) opts.alpha = file_opts.alpha;
            if (!overridden("--beta")) opts.beta = file_opts.beta;
            if (!overridden("--noise")) opts.noise = file_opts.noise;
            if (!overridden("--seed")) opts.seed = file_opts.seed;
            if (!overridden("--nx")) opts.nx = file_opts.nx;
            if (!overridden("--nt")) opts.nt = file_opts.nt;
            if (!overridden("--fine-cells")) opts.fine_cells = file_opts.fine_cells;
            if (!overridden("--horizon")) opts.horizon = file_opts.horizon;
            if (!overridden("--r0")) opts.r0 = file_opts.r0;
            if (!overridden("--r1")) opts.r1 = file_opts.r1;
            if (!overridden("--max-iter")) opts.max_iter = file_opts.max_iter;
            if (!overridden("--morozov-r")) opts.morozov_r = file_opts.morozov_r;
            if (!overridden("--out")) opts.out = file_opts.out;
        }

        if (forward->parsed()) return cmd_forward(opts);
        if (rec->parsed()) return cmd_reconstruct(opts);
        if (sweep->parsed()) return cmd_sweep(opts, sweep_param, sweep_values, workers);
        if (noise->parsed()) return cmd_noise_gen(opts);
        if (eps->parsed()) return cmd_epsilon(pc);
    } catch (const std::invalid_argument& err) {
        std::cerr << "validation error: " << err.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
