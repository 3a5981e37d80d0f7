#pragma once

#include <cmath>
#include <cstdint>

namespace proxkit {

/// SplitMix64 stream. Normal variates use the Box-Muller transform with a
/// cached spare, so a stream's output sequence is fixed by its seed alone.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1).
    double uniform_open01() {
        for (;;) {
            const double u = uniform01();
            if (u > 0.0) return u;
        }
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// The i-th derived stream seed of a master seed; independent streams keep
/// x*, A and the noise decoupled when sizes change.
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t stream_id) {
    Rng r(master);
    std::uint64_t s = 0;
    for (std::uint64_t i = 0; i <= stream_id; ++i) s = r.next();
    return s;
}

}  // namespace proxkit
