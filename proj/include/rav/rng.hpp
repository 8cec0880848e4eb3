#ifndef RAV_RNG_HPP
#define RAV_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace rav {

// 64-bit-seeded generator with a documented, platform-stable draw sequence.
// The engine is std::mt19937_64 (algorithm fixed by the C++ standard); all
// value conversions (uniform doubles, bounded integers, normals) are done
// by hand here rather than through std:: distributions, whose output is
// implementation-defined.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed)
        : seed_(seed), engine_(seed), have_spare_(false), spare_(0.0) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 bits of precision.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform on [0, bound) by rejection; bound must be nonzero.
    std::uint64_t uniform_int(std::uint64_t bound) {
        const std::uint64_t threshold = (-bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold)
                return r % bound;
        }
    }

    // Standard normal via Box-Muller; pairs are generated and cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    // Independent child stream; identical (seed, index) gives an identical
    // stream. Used to parallelize without sharing state.
    SeededRng substream(std::uint64_t index) const {
        return SeededRng(mix64(seed_ + (index + 1) * 0x9E3779B97F4A7C15ULL));
    }

  private:
    static std::uint64_t mix64(std::uint64_t x) {
        // splitmix64 finalizer
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool have_spare_;
    double spare_;
};

}  // namespace rav

#endif
