#pragma once
#include <cmath>
#include <cstdint>
#include <random>

namespace srg {

// splitmix64 finalizer. Used both for seed mixing and for the documented
// per-run seed derivation (see derive_run_seed).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Per-run seed = the (run_index+1)-th output of a splitmix64 stream seeded
// with master_seed. Bit-exact contract: results are independent of thread
// scheduling because each run derives its seed from (master, index) alone.
inline std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t run_index) {
    return mix64(master_seed + 0x9E3779B97F4A7C15ULL * (run_index + 1));
}

// mt19937_64 with hand-rolled distributions. The standard specifies the
// engine's output stream exactly, but not the library distributions, so we
// draw uniforms and exponentials ourselves to keep event sequences
// reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Unbiased uniform in [0, n), Lemire's multiply-shift with rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        __uint128_t m = static_cast<__uint128_t>(next_u64()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                m = static_cast<__uint128_t>(next_u64()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform double in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Exponential waiting time with the given rate. -log1p(-u) is finite for
    // every representable u in [0, 1).
    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    bool bernoulli(double prob) { return uniform() < prob; }

private:
    std::mt19937_64 engine_;
};

}  // namespace srg
