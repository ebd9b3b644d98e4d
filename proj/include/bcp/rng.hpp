#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace bcp {

// Deterministic draw helpers on top of mt19937_64. std::*_distribution is
// implementation-defined, so fixtures and the synthetic generator use these
// instead; one draw consumes a fixed number of engine words.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // uniform in [0, n), unbiased via rejection
    std::uint64_t next_index(std::uint64_t n) {
        if (n == 0)
            return 0;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % n;
    }

    // uniform integer in [lo, hi] inclusive
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next_index(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // uniform in [0, 1), 53-bit resolution
    double next_real() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Box-Muller; draws two uniforms per call, spare discarded for a fixed draw order
    double next_normal() {
        double u1 = next_real();
        double u2 = next_real();
        while (u1 <= 0.0)
            u1 = next_real();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Knuth multiplication method; fine for the small rates used here
    int next_poisson(double lambda) {
        double l = std::exp(-lambda);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= next_real();
        } while (p > l);
        return k - 1;
    }

    // k distinct values from [0, n), ascending
    std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t k);

    // in-place Fisher-Yates
    template <class T> void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_index(i));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace bcp
