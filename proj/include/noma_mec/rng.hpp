#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace noma_mec {

// splitmix64, used for seed derivation so that episode streams are
// decorrelated even for adjacent master seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic random stream. The uniform mapping is fixed here (53-bit
// mantissa draw from mt19937_64) instead of relying on the distributions in
// <random>, whose output is implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform on [0, 1)
    double next_u01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Exponential with unit mean; support [0, inf).
    double exponential() {
        return -std::log1p(-next_u01());
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_u01();
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace noma_mec
