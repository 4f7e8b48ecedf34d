#include "metrics/sampling.hpp"

namespace metrics {

double HaltonSampler::radical_inverse(std::uint64_t n, unsigned base) {
    double inv = 1.0 / base;
    double f = inv;
    double r = 0.0;
    while (n > 0) {
        r += f * static_cast<double>(n % base);
        n /= base;
        f *= inv;
    }
    return r;
}

void HaltonSampler::next(double out[4]) {
    static const unsigned bases[4] = {2, 3, 5, 7};
    for (int d = 0; d < 4; ++d) out[d] = radical_inverse(index_, bases[d]);
    ++index_;
}

} // namespace metrics
