#pragma once

#include <cstdint>
#include <vector>

namespace calibrix {

/// Deterministic low-discrepancy sampler (radical-inverse / Halton style).
/// The seed enters as an index offset so identical seeds reproduce identical
/// sample streams regardless of thread count.
class HaltonSampler {
public:
    explicit HaltonSampler(unsigned seed = 1) : offset_(1 + 7919ull * seed) {}

    /// i-th sample of the base-b van der Corput sequence.
    static double radical_inverse(std::uint64_t i, unsigned base) {
        double inv = 1.0 / base, f = inv, r = 0.0;
        while (i) {
            r += f * static_cast<double>(i % base);
            i /= base;
            f *= inv;
        }
        return r;
    }

    double get(std::uint64_t index, unsigned dim) const {
        static const unsigned primes[6] = {2, 3, 5, 7, 11, 13};
        return radical_inverse(index + offset_, primes[dim % 6]);
    }

    /// Sample in [lo, hi), dimension-separated.
    double in(std::uint64_t index, unsigned dim, double lo, double hi) const {
        return lo + (hi - lo) * get(index, dim);
    }

private:
    std::uint64_t offset_;
};

}  // namespace calibrix
