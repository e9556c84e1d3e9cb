#ifndef SIGSTAT_RNG_HPP
#define SIGSTAT_RNG_HPP

#include <cmath>
#include <cstdint>

namespace sigstat {

/// splitmix64 step; also the stable hash used to derive child seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Child-seed derivation: deterministic, independent of scheduling, so
/// replicates can run in any order (or in parallel) with identical output.
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index * 0xD6E8FEB86659FD93ull + 1));
}

/// Small fully-specified PRNG (splitmix64 stream) with a Box-Muller
/// gaussian. Platform-independent sequences keep experiment reports
/// byte-identical across runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed), has_spare_(false), spare_(0.0) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in (0, 1]; never exactly 0 so log() below is safe.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u = uniform01();
        double v = uniform01();
        double r = std::sqrt(-2.0 * std::log(u));
        double theta = 2.0 * 3.14159265358979323846 * v;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::uint64_t state_;
    bool has_spare_;
    double spare_;
};

} // namespace sigstat

#endif
