#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace diversinet {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Named sub-streams of one simulation run. Each pipeline stage draws from its
// own stream so that changing one stage never shifts another's draws.
enum class Stream : std::uint64_t {
    Assignment = 0,
    Scheme = 1,
    Seeding = 2,
    Epidemic = 3,
    Topology = 4,
};

constexpr std::uint64_t run_seed(std::uint64_t base_seed, std::uint64_t run_index) {
    return base_seed ^ run_index;
}

constexpr std::uint64_t stream_seed(std::uint64_t seed, Stream stream) {
    return splitmix64(splitmix64(seed) + static_cast<std::uint64_t>(stream));
}

/// Seeded random stream. Distributions are implemented here rather than via
/// <random> adaptors so that draws are identical across standard libraries.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng for_stream(std::uint64_t base_seed, std::uint64_t run_index, Stream stream) {
        return Rng(stream_seed(run_seed(base_seed, run_index), stream));
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_open_closed() { return 1.0 - uniform01(); }

    /// Uniform integer on [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace diversinet
