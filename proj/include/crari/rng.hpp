#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace crari {

/**
 * @brief Seedable, splittable random stream used by every randomized operation.
 *
 * The bit source is std::mt19937_64, whose output sequence is fixed by the
 * C++ standard. The transforms on top of it (uniform doubles, bounded
 * indices, Gaussian deviates) are implemented here rather than taken from
 * <random> distributions, whose algorithms are implementation-defined, so a
 * given seed yields the same numbers with every compiler and library.
 *
 * Algorithm (stable across versions):
 *  - engine seed = splitmix64(key); split(s) derives key' = splitmix64(key ^ splitmix64(s + 1)).
 *  - uniform(): top 53 bits of one engine draw, scaled by 2^-53, in [0, 1).
 *  - index(n): rejection sampling on one 64-bit draw (unbiased).
 *  - normal(): Box-Muller cosine branch on two uniform() draws, no caching.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Independent child stream identified by @p stream. Does not advance this stream.
    [[nodiscard]] Rng split(std::uint64_t stream) const;

    [[nodiscard]] std::uint64_t key() const noexcept { return key_; }

    std::uint64_t next_u64() { return engine_(); }
    double uniform();
    /// Uniform integer in [0, n). n must be positive.
    std::size_t index(std::size_t n);
    double normal();
    double normal(double mean, double sd) { return mean + sd * normal(); }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = index(i);
            std::swap(items[i - 1], items[j]);
        }
    }

    /// The first @p k entries of @p items become a uniform random k-subset in random order.
    template <typename T>
    void partial_shuffle(std::span<T> items, std::size_t k) {
        for (std::size_t i = 0; i < k && i + 1 < items.size(); ++i) {
            std::size_t j = i + index(items.size() - i);
            std::swap(items[i], items[j]);
        }
    }

private:
    std::uint64_t key_;
    std::mt19937_64 engine_;
};

[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace crari
