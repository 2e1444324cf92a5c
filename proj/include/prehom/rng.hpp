#pragma once

#include <cstdint>
#include <random>

#include "prehom/rational.hpp"

namespace prehom {

/// Seeded integer sampling on top of mt19937_64. The raw engine sequence is
/// fixed by the standard, and the bounded draw below avoids
/// uniform_int_distribution, whose output is implementation defined. Reports
/// produced from the same seed are therefore byte identical across toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform-ish draw in [lo, hi] by rejection-free modular reduction.
    long draw(long lo, long hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(eng_() % span);
    }

    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

}  // namespace prehom
