#pragma once

#include <cmath>
#include <cstdint>

namespace minimax {

/// Counter-based pseudo-random stream (splitmix64 evaluated at an explicit
/// counter). The n-th output is a pure function of (key, n), so streams can
/// be forked and replayed independent of execution order.
///
/// Gaussian draws use Box-Muller with the cosine branch only; each normal
/// consumes exactly two 64-bit words. This mapping is fixed so that a given
/// seed always yields the same trace.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    static CounterRng from_seed(std::uint64_t base_seed) {
        return CounterRng(mix(base_seed + kGolden));
    }

    /// Independent child stream; deterministic in (this key, index).
    /// Child counters start at zero and never interact with the parent.
    CounterRng fork(std::uint64_t index) const {
        return CounterRng(mix(key_ ^ mix(index + kGolden)));
    }

    std::uint64_t next_u64() {
        return mix(key_ + (++counter_) * kGolden);
    }

    /// Uniform on [0, 1), 53-bit resolution.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0, 1), never exactly 0 or 1 (safe under log).
    double next_open_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (cosine branch).
    double next_gaussian() {
        const double u1 = next_open_unit();
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    /// Uniform on [-c, c].
    double next_symmetric_uniform(double c) {
        return c * (2.0 * next_unit() - 1.0);
    }

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
    static constexpr double kPi = 3.141592653589793238462643383279502884;

    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace minimax
