#pragma once

#include <cmath>
#include <cstdint>

namespace nbldpc {

// SplitMix64 stream. All randomness in the simulator flows through this so
// that a (master_seed, frame_index) pair fully determines a frame, no matter
// how frames are distributed over workers.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform on (0, 1]
    double uniform_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    // uniform on [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, bound)
    uint64_t below(uint64_t bound) { return next() % bound; }
};

// Documented per-frame seeding rule: one SplitMix64 step over the mixed pair.
inline uint64_t seed_for_frame(uint64_t master_seed, uint64_t frame_index) {
    SplitMix64 s(master_seed ^ (0xA0761D6478BD642Full + frame_index * 0x8BB84B93962EACC9ull));
    return s.next();
}

// Box-Muller over a SplitMix64 stream; the second deviate of each pair is
// cached so draws come out in a fixed order.
struct GaussianStream {
    SplitMix64 rng;
    bool have_cached = false;
    double cached = 0.0;

    explicit GaussianStream(uint64_t seed) : rng(seed) {}

    double next() {
        if (have_cached) {
            have_cached = false;
            return cached;
        }
        const double u1 = rng.uniform_pos();
        const double u2 = rng.uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        cached = r * std::sin(t);
        have_cached = true;
        return r * std::cos(t);
    }
};

} // namespace nbldpc
