#include "teinv/grid.hpp"

#include <cmath>

namespace teinv {

bool Field::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

Field& Field::operator+=(const Field& other) {
    require_same_grid(*this, other, "Field::operator+=");
    for (size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

Field& Field::operator-=(const Field& other) {
    require_same_grid(*this, other, "Field::operator-=");
    for (size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

Field& Field::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

Field sample_field(SpaceGrid grid, const std::function<double(double)>& fn) {
    Field f(grid);
    for (int i = 0; i < grid.node_count(); ++i) f[i] = fn(grid.node(i));
    return f;
}

double max_abs(const Field& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

void require_same_grid(const Field& a, const Field& b, const char* what) {
    if (!(a.grid() == b.grid()))
        throw std::invalid_argument(std::string(what) + ": fields live on different grids");
}

Field simpson_time_integral(const Trajectory& traj) {
    const int nt = traj.time.steps;
    if (static_cast<int>(traj.levels.size()) != nt + 1)
        throw std::invalid_argument("simpson_time_integral: trajectory level count mismatch");
    const double third = traj.time.dt() / 3.0;

    Field result(traj.levels.front().grid());
    for (int j = 0; j <= nt; ++j) {
        double w = third;
        if (j > 0 && j < nt) w *= (j % 2 == 1) ? 4.0 : 2.0;
        const Field& level = traj.at(j);
        require_same_grid(result, level, "simpson_time_integral");
        for (int i = 0; i < result.size(); ++i) result[i] += w * level[i];
    }
    return result;
}

Field project_fine_to_working(const Field& fine, SpaceGrid working) {
    const int nf = fine.grid().cells;
    const int nw = working.cells;
    if (nf % nw != 0)
        throw std::invalid_argument("project_fine_to_working: fine grid does not resolve working grid");
    const int ratio = nf / nw;
    Field out(working);
    for (int i = 0; i <= nw; ++i) out[i] = fine[i * ratio];
    return out;
}

}  // namespace teinv
