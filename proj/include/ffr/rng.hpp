#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace ffr {

// xoshiro256** seeded through splitmix64.  Hand-rolled so that seeded runs
// reproduce bit-identically across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : s_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            w = z ^ (z >> 31);
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, n), n > 0; rejection keeps it unbiased.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % n;
        std::uint64_t v;
        do { v = next(); } while (v >= limit);
        return v % n;
    }

    double real01() { return (next() >> 11) * (1.0 / 9007199254740992.0); }

    // Uniform in [lo, hi].
    double real(double lo, double hi) { return lo + (hi - lo) * real01(); }

    bool coin() { return next() & 1; }

    // k distinct values from [0, n), sorted.
    std::vector<std::uint64_t> sample(std::uint64_t n, std::uint64_t k);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

inline std::vector<std::uint64_t> Rng::sample(std::uint64_t n, std::uint64_t k) {
    if (k > n) k = n;
    std::vector<std::uint64_t> pool(n);
    for (std::uint64_t i = 0; i < n; ++i) pool[i] = i;
    for (std::uint64_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + below(n - i)]);
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace ffr
