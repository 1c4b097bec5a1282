#include "teinv/forward.hpp"

#include <cmath>

#include "step_detail.hpp"
#include "teinv/p1.hpp"

namespace teinv {

BandedMatrix assemble_step_system(const MaterialParams& params, const SpaceGrid& grid, double tau,
                                  const Kernel& kernel) {
    params.validate();
    if (!(tau > 0.0)) throw std::invalid_argument("assemble_step_system: tau must be positive");

    const int m = grid.cells - 1;  // interior nodes per field
    if (m < 1) throw std::invalid_argument("assemble_step_system: grid has no interior nodes");
    const double h = grid.spacing();

    const double cu = tau * tau * (params.lambda + 2.0 * params.mu);  // u stiffness weight
    const double cth = tau * params.conductivity + tau * tau * kernel(0.0);
    const double cup = tau * tau * params.coupling;                 // u <- grad theta
    const double ctu = params.ref_temperature * params.coupling;    // theta <- u coupling

    // Interleaved interior unknowns (u_1, theta_1, u_2, theta_2, ...): the
    // farthest coupling is u_i <-> theta_(i+1), three scalar slots away.
    BandedMatrix a(2 * m, 3, 3);
    const auto iu = [](int r) { return 2 * (r - 1); };
    const auto ith = [](int r) { return 2 * (r - 1) + 1; };

    for (int r = 1; r <= m; ++r) {
        // u row: rho M + cu S on u, cup G on theta (G has zero diagonal).
        a.at(iu(r), iu(r)) = params.rho * 4.0 * h / 6.0 + cu * 2.0 / h;
        if (r > 1) {
            a.at(iu(r), iu(r - 1)) = params.rho * h / 6.0 - cu / h;
            a.at(iu(r), ith(r - 1)) = -cup * 0.5;
        }
        if (r < m) {
            a.at(iu(r), iu(r + 1)) = params.rho * h / 6.0 - cu / h;
            a.at(iu(r), ith(r + 1)) = cup * 0.5;
        }

        // theta row: -T0 gamma G' on u, rho C_s M + cth S on theta.
        a.at(ith(r), ith(r)) = params.rho * params.specific_heat * 4.0 * h / 6.0 + cth * 2.0 / h;
        if (r > 1) {
            a.at(ith(r), ith(r - 1)) = params.rho * params.specific_heat * h / 6.0 - cth / h;
            a.at(ith(r), iu(r - 1)) = -ctu * 0.5;
        }
        if (r < m) {
            a.at(ith(r), ith(r + 1)) = params.rho * params.specific_heat * h / 6.0 - cth / h;
            a.at(ith(r), iu(r + 1)) = ctu * 0.5;
        }
    }
    return a;
}

ForwardSolver::ForwardSolver(MaterialParams params, SpaceGrid grid, TimeGrid time, Kernel kernel)
    : params_(params),
      grid_(grid),
      time_(time),
      kernel_(kernel),
      matrix_(assemble_step_system(params, grid, time.dt(), kernel)),
      lu_(matrix_) {}

// Discrete step at level i (all products with the full nodal vectors, interior
// rows kept):
//   [rho M + tau^2(lambda+2mu) S] u_i + tau^2 gamma G theta_i
//       = tau^2 M p_i + rho M (u_{i-1} + tau du_{i-1})
//   [rho C_s M + tau(kappa + tau k(0)) S] theta_i - T0 gamma G' u_i
//       = tau M h_i + rho C_s M theta_{i-1} - T0 gamma G' u_{i-1}
//         - tau^2 sum_{j<i} k(t_i - t_j) S theta_j
// The j = i memory term sits in the matrix; older levels are lagged.
ForwardSolution ForwardSolver::solve(const SourceTerm& load, const SourceTerm& heat,
                                     const InitialData& init) const {
    const int m = grid_.cells - 1;
    const int nt = time_.steps;
    const double tau = time_.dt();
    const double rho = params_.rho;
    const double rho_cs = params_.rho * params_.specific_heat;
    const double t0g = params_.ref_temperature * params_.coupling;

    Field u = detail::pin_boundary(init.displacement, "ForwardSolver");
    Field theta = detail::pin_boundary(init.temperature, "ForwardSolver");
    Field du = detail::pin_boundary_quiet(init.velocity);

    ForwardSolution sol{Trajectory{time_, {}}, Trajectory{time_, {}}, Trajectory{time_, {}}};
    sol.displacement.levels.reserve(nt + 1);
    sol.temperature.levels.reserve(nt + 1);
    sol.velocity.levels.reserve(nt + 1);
    sol.displacement.levels.push_back(u);
    sol.temperature.levels.push_back(theta);
    sol.velocity.levels.push_back(du);

    // Lagged memory terms need S theta_j for 1 <= j < i.
    std::vector<std::vector<double>> stiff_theta;
    stiff_theta.reserve(nt + 1);
    stiff_theta.push_back(stiffness_apply(theta));

    std::vector<double> rhs(static_cast<size_t>(2 * m));
    const auto iu = [](int r) { return 2 * (r - 1); };
    const auto ith = [](int r) { return 2 * (r - 1) + 1; };

    for (int i = 1; i <= nt; ++i) {
        const double t = time_.node(i);
        const Field p = load.sample(grid_, t);
        const Field q = heat.sample(grid_, t);
        detail::check_finite(p, "ForwardSolver: load");
        detail::check_finite(q, "ForwardSolver: heat source");

        Field predictor = u;
        for (int r = 0; r < predictor.size(); ++r) predictor[r] += tau * du[r];

        const std::vector<double> mp = mass_apply(p);
        const std::vector<double> mpred = mass_apply(predictor);
        const std::vector<double> mq = mass_apply(q);
        const std::vector<double> mth = mass_apply(theta);
        const std::vector<double> gtu = gradient_transpose_apply(u);

        std::vector<double> memory(static_cast<size_t>(m + 1), 0.0);
        for (int j = 1; j < i; ++j) {
            const double w = kernel_(tau * (i - j));
            const std::vector<double>& sth = stiff_theta[static_cast<size_t>(j)];
            for (int r = 1; r <= m; ++r) memory[static_cast<size_t>(r)] += w * sth[static_cast<size_t>(r)];
        }

        for (int r = 1; r <= m; ++r) {
            rhs[static_cast<size_t>(iu(r))] = tau * tau * mp[static_cast<size_t>(r)] + rho * mpred[static_cast<size_t>(r)];
            rhs[static_cast<size_t>(ith(r))] = tau * mq[static_cast<size_t>(r)] + rho_cs * mth[static_cast<size_t>(r)] -
                                               t0g * gtu[static_cast<size_t>(r)] -
                                               tau * tau * memory[static_cast<size_t>(r)];
        }

        const std::vector<double> x = lu_.solve(rhs);
        detail::check_step_residual(matrix_, x, rhs);

        Field u_next(grid_), theta_next(grid_);
        detail::split_interleaved(x, u_next, theta_next);
        Field du_next = u_next;
        du_next -= u;
        du_next *= 1.0 / tau;

        sol.displacement.levels.push_back(u_next);
        sol.temperature.levels.push_back(theta_next);
        sol.velocity.levels.push_back(du_next);
        stiff_theta.push_back(stiffness_apply(theta_next));

        u = std::move(u_next);
        theta = std::move(theta_next);
        du = std::move(du_next);
    }
    return sol;
}

ForwardSolution ForwardSolver::solve_source_only(const TimeFn& g, const Field& direction,
                                                 SourceSlot slot) const {
    InitialData zero{Field(grid_), Field(grid_), Field(grid_)};
    SourceTerm src = SourceTerm::separable(g, direction);
    if (slot == SourceSlot::Load) return solve(src, SourceTerm::zero(), zero);
    return solve(SourceTerm::zero(), src, zero);
}

ForwardSolution solve_forward(const ProblemSpec& spec) {
    ForwardSolver solver(spec.params, spec.grid, spec.time, spec.kernel);
    return solver.solve(spec.load, spec.heat, spec.init);
}

ForwardSolution solve_sensitivity(const Field& direction, const TimeFn& g,
                                  const ForwardSolver& solver, SourceSlot slot) {
    return solver.solve_source_only(g, direction, slot);
}

}  // namespace teinv
