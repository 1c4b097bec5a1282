#include "teinv/p1.hpp"

#include <cmath>

namespace teinv {

double inner_l2(const Field& a, const Field& b) {
    require_same_grid(a, b, "inner_l2");
    const int n = a.grid().cells;
    const double h6 = a.grid().spacing() / 6.0;
    double acc = 0.0;
    for (int e = 0; e < n; ++e) {
        const double al = a[e], ar = a[e + 1];
        const double bl = b[e], br = b[e + 1];
        acc += h6 * (2.0 * al * bl + al * br + ar * bl + 2.0 * ar * br);
    }
    return acc;
}

double norm_l2(const Field& f) { return std::sqrt(inner_l2(f, f)); }

std::vector<double> mass_apply(const Field& z) {
    const int n = z.grid().cells;
    const double h6 = z.grid().spacing() / 6.0;
    std::vector<double> y(static_cast<size_t>(n + 1));
    y[0] = h6 * (2.0 * z[0] + z[1]);
    for (int i = 1; i < n; ++i) y[i] = h6 * (z[i - 1] + 4.0 * z[i] + z[i + 1]);
    y[n] = h6 * (z[n - 1] + 2.0 * z[n]);
    return y;
}

std::vector<double> stiffness_apply(const Field& z) {
    const int n = z.grid().cells;
    const double inv_h = 1.0 / z.grid().spacing();
    std::vector<double> y(static_cast<size_t>(n + 1));
    y[0] = inv_h * (z[0] - z[1]);
    for (int i = 1; i < n; ++i) y[i] = inv_h * (-z[i - 1] + 2.0 * z[i] - z[i + 1]);
    y[n] = inv_h * (z[n] - z[n - 1]);
    return y;
}

std::vector<double> gradient_apply(const Field& z) {
    const int n = z.grid().cells;
    std::vector<double> y(static_cast<size_t>(n + 1));
    y[0] = 0.5 * (z[1] - z[0]);
    for (int i = 1; i < n; ++i) y[i] = 0.5 * (z[i + 1] - z[i - 1]);
    y[n] = 0.5 * (z[n] - z[n - 1]);
    return y;
}

std::vector<double> gradient_transpose_apply(const Field& z) {
    const int n = z.grid().cells;
    std::vector<double> y(static_cast<size_t>(n + 1));
    y[0] = -0.5 * (z[0] + z[1]);
    for (int i = 1; i < n; ++i) y[i] = 0.5 * (z[i - 1] - z[i + 1]);
    y[n] = 0.5 * (z[n - 1] + z[n]);
    return y;
}

}  // namespace teinv
