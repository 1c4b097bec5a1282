#pragma once
// Exponential memory kernel and the discrete forward/adjoint convolution
// quadratures used by the time-stepping solvers.

#include <functional>
#include <span>

#include "teinv/grid.hpp"

namespace teinv {

/// Memory kernel k(t) = a exp(-b t), a > 0, b > 0. The sign pattern
/// (-1)^j k^(j) >= 0 (j = 0, 1, 2) then holds automatically.
class Kernel {
  public:
    Kernel(double amplitude, double decay_rate);

    double amplitude() const { return amplitude_; }
    double decay_rate() const { return decay_rate_; }

    /// k(t) for t >= 0; negative t is an error.
    double operator()(double t) const;

  private:
    double amplitude_, decay_rate_;
};

using KernelFn = std::function<double(double)>;

/// Causal quadrature (k*z)_i = sum_{j=1..i} k(t_i - t_j) z_j tau, (k*z)_0 = 0.
/// `levels` spans z_0..z_n; only z_1..z_i enter the sum.
Field conv_forward(const KernelFn& k, std::span<const Field> levels, double tau, int i);
Field conv_forward(const Kernel& k, std::span<const Field> levels, double tau, int i);

/// Anticausal quadrature (k(*)z)_i = sum_{j=i..n-1} k(t_j - t_i) z_j tau,
/// with (k(*)z)_n = 0. `levels` spans z_0..z_n.
Field conv_adjoint(const KernelFn& k, std::span<const Field> levels, double tau, int i);
Field conv_adjoint(const Kernel& k, std::span<const Field> levels, double tau, int i);

}  // namespace teinv
