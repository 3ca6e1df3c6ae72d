#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace busfactor {

/// splitmix64 finaliser, used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for sub-stream `index` of `seed`; distinct (seed, index) pairs give
/// unrelated streams so parallel work can be scheduled in any order.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// mt19937_64 with distribution code written out here: the standard
/// distributions are implementation-defined, which would break byte-identical
/// output across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (true) {
            std::uint64_t x = engine_();
            if (x >= threshold) return x % bound;
        }
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    /// First `k` entries of `items` become a uniform sample without replacement.
    template <typename T>
    void partial_shuffle(std::vector<T>& items, std::size_t k) {
        for (std::size_t i = 0; i < k && i + 1 < items.size(); ++i) {
            std::size_t j = i + static_cast<std::size_t>(below(items.size() - i));
            std::swap(items[i], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace busfactor
