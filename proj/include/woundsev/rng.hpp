#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace woundsev {

/// Deterministic random source. The engine (std::mt19937_64) is bit-exact by
/// the standard; the distribution mappings live here because the std::
/// distribution classes are implementation-defined and would break
/// byte-identical reproducibility across toolchains.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    /// Unbiased integer in [0, n). n must be > 0.
    uint64_t below(uint64_t n) {
        // rejection sampling on the top of the range
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Integer in [lo, hi], inclusive.
    int int_in(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo) + 1));
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Gaussian via Box-Muller.
    double normal(double mean = 0.0, double stddev = 1.0) {
        if (have_spare_) {
            have_spare_ = false;
            return mean + stddev * spare_;
        }
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = uniform();  // avoid log(0)
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return mean + stddev * r * std::cos(theta);
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            const size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Derives an independent stream seed from a master seed and a purpose label
/// ("split", "init", "shuffle", ...) so pipeline stages never share a stream.
uint64_t derive_seed(uint64_t master, std::string_view purpose, uint64_t index = 0);

}  // namespace woundsev
