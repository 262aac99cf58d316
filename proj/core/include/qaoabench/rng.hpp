#pragma once

#include <cstdint>
#include <string_view>

namespace qaoabench {

// All randomness in the toolkit flows from explicit 64-bit seeds through the
// two generators below. No ambient RNG anywhere.

// One splitmix64 step (Steele, Lea & Flood). Used for seeding xoshiro state
// and for deriving child seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Child-seed derivation: folds each tag into the parent seed through
// splitmix64. derive_seed(s, a, b) != derive_seed(s, b, a) in general, so
// call sites fix a documented tag order (see the file-format notes in the
// README).
template <typename... Tags>
std::uint64_t derive_seed(std::uint64_t seed, Tags... tags) noexcept {
    std::uint64_t state = seed;
    ((state = splitmix64_next(state) ^ static_cast<std::uint64_t>(tags)), ...);
    return splitmix64_next(state);
}

// FNV-1a, for folding string ids into seed derivations.
constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

// xoshiro256++ (Blackman & Vigna, public domain reference implementation),
// state seeded via splitmix64.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64_next(sm);
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1): top 53 bits scaled by 2^-53.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) noexcept { return lo + uniform() * (hi - lo); }

    // std::uniform_random_bit_generator interface.
    using result_type = std::uint64_t;
    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~0ull; }
    result_type operator()() noexcept { return next(); }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4] = {};
};

}  // namespace qaoabench
