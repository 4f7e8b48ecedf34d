#pragma once

#include <cstdint>

namespace metrics {

// Halton low-discrepancy sequence in up to 4 dimensions (bases 2, 3, 5, 7),
// offset by the seed so distinct seeds give distinct deterministic streams.
class HaltonSampler {
public:
    explicit HaltonSampler(unsigned seed) : index_(1 + static_cast<std::uint64_t>(seed) * 1009) {}

    // next point in [0,1)^4
    void next(double out[4]);

private:
    static double radical_inverse(std::uint64_t n, unsigned base);
    std::uint64_t index_;
};

} // namespace metrics
