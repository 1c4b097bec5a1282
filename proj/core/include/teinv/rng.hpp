#pragma once
// Reproducible random number generation: mt19937_64 streams seeded through
// splitmix64, and a Box-Muller Gaussian sampler whose output is bit-identical
// across platforms for a fixed seed.

#include <cstdint>
#include <random>

namespace teinv {

/// splitmix64 step (Steele, Lea, Flood): advances `state` and returns a mixed
/// 64-bit value. Used to derive independent stream seeds from one base seed.
std::uint64_t splitmix64(std::uint64_t& state);

/// Standard-normal sampler: mt19937_64 uniforms through the Box-Muller
/// transform. mt19937_64 output is pinned by the standard, and the transform
/// is written out explicitly, so fixed seeds reproduce bit-for-bit.
class GaussianSampler {
  public:
    explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

    /// One N(0,1) draw.
    double next();

  private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;

    double uniform_unit();  // uniform on (0,1]
};

}  // namespace teinv
