#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace kedmd {

/// Purpose tags for the independent sub-streams of one experiment.
enum class StreamPurpose : std::uint64_t {
    Sampling = 1,         // training states and their successors
    TrueTrajectories = 2, // reference realizations of the true system
    Zeta = 3,             // noise draws for the lifted noise term
};

/// Seedable, splittable random stream.
///
/// A stream is identified by a 64-bit key; `child(tag)` derives a new key
/// without touching the parent's state, so sub-streams can be handed to
/// parallel workers in any order and still produce the same numbers.
///
/// Every variate consumes a fixed number of engine words: `uniform_open`
/// one, `normal` two (Box-Muller, second value discarded). Step functions
/// rely on this to document their draw counts.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t key) : key_(key) { reseed(); }

    [[nodiscard]] std::uint64_t key() const noexcept { return key_; }

    [[nodiscard]] RandomStream child(std::uint64_t tag) const {
        return RandomStream(mix(key_ ^ mix(tag + 0x9e3779b97f4a7c15ULL)));
    }
    [[nodiscard]] RandomStream child(StreamPurpose purpose) const {
        return child(static_cast<std::uint64_t>(purpose));
    }
    [[nodiscard]] RandomStream child(std::initializer_list<std::uint64_t> path) const {
        RandomStream s = *this;
        for (auto tag : path) s = s.child(tag);
        return s;
    }

    /// Uniform on the open interval (0, 1).
    double uniform_open() {
        const auto bits = engine_() >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    double normal() {
        const double u1 = uniform_open();
        const double u2 = uniform_open();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double exponential() { return -std::log(uniform_open()); }

private:
    // SplitMix64 finalizer.
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    void reseed() {
        std::seed_seq seq{static_cast<std::uint32_t>(key_), static_cast<std::uint32_t>(key_ >> 32)};
        engine_.seed(seq);
    }

    std::uint64_t key_;
    std::mt19937_64 engine_;
};

}  // namespace kedmd
