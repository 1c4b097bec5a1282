#include "teinv/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace teinv {

Kernel::Kernel(double amplitude, double decay_rate)
    : amplitude_(amplitude), decay_rate_(decay_rate) {
    if (!(amplitude > 0.0) || !(decay_rate > 0.0))
        throw std::invalid_argument("Kernel: amplitude and decay rate must be positive");
}

double Kernel::operator()(double t) const {
    if (t < 0.0) throw std::invalid_argument("Kernel: negative time");
    return amplitude_ * std::exp(-decay_rate_ * t);
}

Field conv_forward(const KernelFn& k, std::span<const Field> levels, double tau, int i) {
    const int n = static_cast<int>(levels.size()) - 1;
    if (i < 0 || i > n) throw std::invalid_argument("conv_forward: level index out of range");
    Field acc(levels[0].grid());
    for (int j = 1; j <= i; ++j) {
        const double w = k(tau * (i - j)) * tau;
        const Field& z = levels[static_cast<size_t>(j)];
        require_same_grid(acc, z, "conv_forward");
        for (int r = 0; r < acc.size(); ++r) acc[r] += w * z[r];
    }
    return acc;
}

Field conv_forward(const Kernel& k, std::span<const Field> levels, double tau, int i) {
    return conv_forward(KernelFn([&k](double t) { return k(t); }), levels, tau, i);
}

Field conv_adjoint(const KernelFn& k, std::span<const Field> levels, double tau, int i) {
    const int n = static_cast<int>(levels.size()) - 1;
    if (i < 0 || i > n) throw std::invalid_argument("conv_adjoint: level index out of range");
    Field acc(levels[0].grid());
    for (int j = i; j <= n - 1; ++j) {
        const double w = k(tau * (j - i)) * tau;
        const Field& z = levels[static_cast<size_t>(j)];
        require_same_grid(acc, z, "conv_adjoint");
        for (int r = 0; r < acc.size(); ++r) acc[r] += w * z[r];
    }
    return acc;
}

Field conv_adjoint(const Kernel& k, std::span<const Field> levels, double tau, int i) {
    return conv_adjoint(KernelFn([&k](double t) { return k(t); }), levels, tau, i);
}

}  // namespace teinv
