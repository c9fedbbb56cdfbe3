#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace ergolab {

/// Counter-based random stream built on the splitmix64 finalizer. Streams are
/// derived from a (seed, tag, index...) key so that results are reproducible
/// regardless of scheduling order; the generator state is a plain counter.
class Rng {
public:
    explicit Rng(std::uint64_t key) : counter_(0), key_(key) {}

    /// Derive a stream key by folding words into a splitmix64 chain.
    static std::uint64_t derive(std::initializer_list<std::uint64_t> words) {
        std::uint64_t h = 0x9E3779B97F4A7C15ULL;
        for (std::uint64_t w : words) {
            h = mix(h ^ mix(w));
        }
        return h;
    }

    std::uint64_t next_u64() {
        counter_ += 0x9E3779B97F4A7C15ULL;
        return mix(counter_ ^ key_);
    }

    /// Uniform double in [0, 1) with 53 bits of precision.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [0, 2*pi).
    double uniform_angle() { return uniform() * 6.283185307179586476925286766559; }

    /// Standard normal via Box-Muller (portable, no libm distribution state).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = u2 * 6.283185307179586476925286766559;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t counter_;
    std::uint64_t key_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace ergolab
