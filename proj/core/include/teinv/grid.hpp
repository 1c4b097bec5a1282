#pragma once
// Uniform meshes on the unit interval, time partitions, nodal fields and
// trajectories, composite Simpson time integration, fine-to-working restriction.

#include <functional>
#include <stdexcept>
#include <vector>

namespace teinv {

/// Uniform subdivision of the spatial domain (0,1) into `cells` elements.
struct SpaceGrid {
    int cells = 0;

    explicit SpaceGrid(int n) : cells(n) {
        if (n <= 0) throw std::invalid_argument("SpaceGrid: cell count must be positive");
    }

    double spacing() const { return 1.0 / cells; }
    int node_count() const { return cells + 1; }
    double node(int i) const { return static_cast<double>(i) / cells; }

    friend bool operator==(const SpaceGrid&, const SpaceGrid&) = default;
};

/// Uniform partition of [0, horizon] into an even number of steps.
/// Evenness is required by the composite Simpson rule used throughout.
struct TimeGrid {
    int steps = 0;
    double horizon = 0.0;

    TimeGrid(int n, double T) : steps(n), horizon(T) {
        if (n <= 0 || n % 2 != 0)
            throw std::invalid_argument("TimeGrid: step count must be positive and even");
        if (!(T > 0.0)) throw std::invalid_argument("TimeGrid: horizon must be positive");
    }

    double dt() const { return horizon / steps; }
    int node_count() const { return steps + 1; }
    double node(int j) const { return horizon * j / steps; }

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

/// Nodal values of a scalar function on a SpaceGrid.
class Field {
  public:
    Field() = default;
    explicit Field(SpaceGrid grid, double fill = 0.0)
        : grid_(grid), values_(static_cast<size_t>(grid.node_count()), fill) {}
    Field(SpaceGrid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
        if (static_cast<int>(values_.size()) != grid_.node_count())
            throw std::invalid_argument("Field: value count does not match grid");
    }

    const SpaceGrid& grid() const { return grid_; }
    int size() const { return static_cast<int>(values_.size()); }
    double& operator[](int i) { return values_[static_cast<size_t>(i)]; }
    double operator[](int i) const { return values_[static_cast<size_t>(i)]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    bool all_finite() const;

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double s);

    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(double s, Field f) { return f *= s; }
    friend Field operator*(Field f, double s) { return f *= s; }

  private:
    SpaceGrid grid_{1};
    std::vector<double> values_;
};

/// Samples a closed-form function at the grid nodes.
Field sample_field(SpaceGrid grid, const std::function<double(double)>& fn);

double max_abs(const Field& f);

void require_same_grid(const Field& a, const Field& b, const char* what);

/// Time-indexed sequence of fields, one per time level (steps + 1 entries).
struct Trajectory {
    TimeGrid time{2, 1.0};
    std::vector<Field> levels;

    const Field& at(int j) const { return levels[static_cast<size_t>(j)]; }
};

/// Composite Simpson 1/3 integral over the trajectory's time levels:
/// sum_j w_j traj[j] with w = (dt/3)(1, 4, 2, 4, ..., 2, 4, 1).
Field simpson_time_integral(const Trajectory& traj);

/// Nodal restriction onto a coarser grid whose nodes are a subset of the
/// fine grid's nodes. Exact for data living on shared nodes.
Field project_fine_to_working(const Field& fine, SpaceGrid working);

}  // namespace teinv
