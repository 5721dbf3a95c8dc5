#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace crosscalc {

/// Seeded generator with a platform-independent draw: std::mt19937_64 is
/// fully specified by the standard, the distributions are not, so bounded
/// draws are done by hand.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform-ish value in [0, n); n must be positive.
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
    /// Uniform-ish value in [lo, hi].
    std::int64_t in_range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool chance(std::size_t numerator, std::size_t denominator) { return below(denominator) < numerator; }

private:
    std::mt19937_64 engine_;
};

}  // namespace crosscalc
