#include "teinv/problem.hpp"

#include <stdexcept>

namespace teinv {

void MaterialParams::validate() const {
    if (!(rho > 0.0) || !(specific_heat > 0.0) || !(conductivity > 0.0) || !(lambda > 0.0))
        throw std::invalid_argument("MaterialParams: rho, C_s, kappa, lambda must be positive");
    // coupling = 0 gives the decoupled wave/heat pair, a useful degenerate case
    if (mu < 0.0 || ref_temperature < 0.0 || coupling < 0.0)
        throw std::invalid_argument("MaterialParams: mu, T0 and gamma must be nonnegative");
}

SourceTerm SourceTerm::of(SpaceTimeFn fn) {
    SourceTerm s;
    s.background_ = std::move(fn);
    return s;
}

SourceTerm SourceTerm::separable(TimeFn g, Field profile) {
    SourceTerm s;
    s.modulation_ = std::move(g);
    s.profile_ = std::move(profile);
    return s;
}

SourceTerm SourceTerm::constant_in_time(Field profile) {
    return separable([](double) { return 1.0; }, std::move(profile));
}

SourceTerm& SourceTerm::with_background(SpaceTimeFn fn) {
    background_ = std::move(fn);
    return *this;
}

Field SourceTerm::sample(const SpaceGrid& grid, double t) const {
    Field out(grid);
    if (background_)
        for (int i = 0; i < grid.node_count(); ++i) out[i] = background_(grid.node(i), t);
    if (profile_) {
        if (!(profile_->grid() == grid))
            throw std::invalid_argument("SourceTerm: profile grid does not match solve grid");
        const double g = modulation_(t);
        for (int i = 0; i < grid.node_count(); ++i) out[i] += g * (*profile_)[i];
    }
    return out;
}

}  // namespace teinv
