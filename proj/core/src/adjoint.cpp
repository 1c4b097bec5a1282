#include "teinv/adjoint.hpp"

#include "step_detail.hpp"
#include "teinv/p1.hpp"

namespace teinv {

namespace {

// Same block layout as the forward step matrix, with the adjoint couplings:
// u* rows carry -tau gamma T0 G on theta*, theta* rows carry -tau gamma G on u*.
BandedMatrix assemble_adjoint_step(const MaterialParams& params, const SpaceGrid& grid, double tau,
                                   const Kernel& kernel) {
    params.validate();
    const int m = grid.cells - 1;
    if (m < 1) throw std::invalid_argument("AdjointSolver: grid has no interior nodes");
    const double h = grid.spacing();

    const double cu = tau * tau * (params.lambda + 2.0 * params.mu);
    const double cth = tau * params.conductivity + tau * tau * kernel(0.0);
    const double cup = tau * params.coupling * params.ref_temperature;
    const double ctu = tau * params.coupling;

    BandedMatrix a(2 * m, 3, 3);
    const auto iu = [](int r) { return 2 * (r - 1); };
    const auto ith = [](int r) { return 2 * (r - 1) + 1; };

    for (int r = 1; r <= m; ++r) {
        a.at(iu(r), iu(r)) = params.rho * 4.0 * h / 6.0 + cu * 2.0 / h;
        a.at(ith(r), ith(r)) = params.rho * params.specific_heat * 4.0 * h / 6.0 + cth * 2.0 / h;
        if (r > 1) {
            a.at(iu(r), iu(r - 1)) = params.rho * h / 6.0 - cu / h;
            a.at(iu(r), ith(r - 1)) = cup * 0.5;   // -cup * G, left neighbour
            a.at(ith(r), ith(r - 1)) = params.rho * params.specific_heat * h / 6.0 - cth / h;
            a.at(ith(r), iu(r - 1)) = ctu * 0.5;   // -ctu * G, left neighbour
        }
        if (r < m) {
            a.at(iu(r), iu(r + 1)) = params.rho * h / 6.0 - cu / h;
            a.at(iu(r), ith(r + 1)) = -cup * 0.5;
            a.at(ith(r), ith(r + 1)) = params.rho * params.specific_heat * h / 6.0 - cth / h;
            a.at(ith(r), iu(r + 1)) = -ctu * 0.5;
        }
    }
    return a;
}

}  // namespace

AdjointSolver::AdjointSolver(MaterialParams params, SpaceGrid grid, TimeGrid time, Kernel kernel)
    : params_(params),
      grid_(grid),
      time_(time),
      kernel_(kernel),
      matrix_(assemble_adjoint_step(params, grid, time.dt(), kernel)),
      lu_(matrix_) {}

AdjointSpec AdjointSolver::blank_spec() const {
    return AdjointSpec{Field(grid_), Field(grid_), Field(grid_), SourceTerm::zero(),
                       SourceTerm::zero()};
}

// Backward step at level i (solved for i = n_t-1, ..., 0):
//   [rho M + tau^2(lambda+2mu) S] u*_i - tau gamma T0 G theta*_i
//       = tau^2 M p*_i + rho M u*_{i+1} - rho tau M dAu*_{i+1} - tau gamma T0 G theta*_{i+1}
//   [rho C_s M + tau(kappa + tau k(0)) S] theta*_i - tau gamma G u*_i
//       = tau M h*_i + rho C_s M theta*_{i+1}
//         - tau^2 sum_{j=i+1}^{n_t-1} k(t_j - t_i) S theta*_j
// with dAu*_i = (u*_{i+1} - u*_i)/tau and terminal data at level n_t. Note the
// anticausal memory sum never touches the terminal level.
AdjointSolution AdjointSolver::solve(const AdjointSpec& spec) const {
    const int m = grid_.cells - 1;
    const int nt = time_.steps;
    const double tau = time_.dt();
    const double rho = params_.rho;
    const double rho_cs = params_.rho * params_.specific_heat;
    const double gt0 = params_.coupling * params_.ref_temperature;

    Field u = detail::pin_boundary(spec.terminal_displacement, "AdjointSolver");
    Field theta = detail::pin_boundary(spec.terminal_temperature, "AdjointSolver");
    Field du = detail::pin_boundary_quiet(spec.terminal_velocity);

    std::vector<Field> u_levels(static_cast<size_t>(nt + 1), Field(grid_));
    std::vector<Field> theta_levels(static_cast<size_t>(nt + 1), Field(grid_));
    u_levels[static_cast<size_t>(nt)] = u;
    theta_levels[static_cast<size_t>(nt)] = theta;

    std::vector<std::vector<double>> stiff_theta(static_cast<size_t>(nt + 1));
    stiff_theta[static_cast<size_t>(nt)] = stiffness_apply(theta);

    std::vector<double> rhs(static_cast<size_t>(2 * m));
    const auto iu = [](int r) { return 2 * (r - 1); };
    const auto ith = [](int r) { return 2 * (r - 1) + 1; };

    for (int i = nt - 1; i >= 0; --i) {
        const double t = time_.node(i);
        const Field p = spec.load_forcing.sample(grid_, t);
        const Field q = spec.heat_forcing.sample(grid_, t);
        detail::check_finite(p, "AdjointSolver: load forcing");
        detail::check_finite(q, "AdjointSolver: heat forcing");

        const std::vector<double> mp = mass_apply(p);
        const std::vector<double> mu_next = mass_apply(u);
        const std::vector<double> mdu_next = mass_apply(du);
        const std::vector<double> gth_next = gradient_apply(theta);
        const std::vector<double> mq = mass_apply(q);
        const std::vector<double> mth_next = mass_apply(theta);

        std::vector<double> memory(static_cast<size_t>(m + 1), 0.0);
        for (int j = i + 1; j <= nt - 1; ++j) {
            const double w = kernel_(tau * (j - i));
            const std::vector<double>& sth = stiff_theta[static_cast<size_t>(j)];
            for (int r = 1; r <= m; ++r) memory[static_cast<size_t>(r)] += w * sth[static_cast<size_t>(r)];
        }

        for (int r = 1; r <= m; ++r) {
            rhs[static_cast<size_t>(iu(r))] =
                tau * tau * mp[static_cast<size_t>(r)] + rho * mu_next[static_cast<size_t>(r)] -
                rho * tau * mdu_next[static_cast<size_t>(r)] - tau * gt0 * gth_next[static_cast<size_t>(r)];
            rhs[static_cast<size_t>(ith(r))] = tau * mq[static_cast<size_t>(r)] +
                                               rho_cs * mth_next[static_cast<size_t>(r)] -
                                               tau * tau * memory[static_cast<size_t>(r)];
        }

        const std::vector<double> x = lu_.solve(rhs);
        detail::check_step_residual(matrix_, x, rhs);

        Field u_i(grid_), theta_i(grid_);
        detail::split_interleaved(x, u_i, theta_i);
        Field du_i = u;
        du_i -= u_i;
        du_i *= 1.0 / tau;

        u_levels[static_cast<size_t>(i)] = u_i;
        theta_levels[static_cast<size_t>(i)] = theta_i;
        stiff_theta[static_cast<size_t>(i)] = stiffness_apply(theta_i);

        u = std::move(u_i);
        theta = std::move(theta_i);
        du = std::move(du_i);
    }

    return AdjointSolution{Trajectory{time_, std::move(u_levels)},
                           Trajectory{time_, std::move(theta_levels)}};
}

}  // namespace teinv
