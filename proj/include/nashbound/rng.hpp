#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace nashbound {

using Rng = std::mt19937_64;

// splitmix64 step; also the mixer for deriving substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic child seed from a master seed and a tag path. Streams with
// distinct tags are effectively independent.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t state = master ^ 0x6a09e667f3bcc909ULL;
    std::uint64_t out = splitmix64(state);
    for (std::uint64_t t : tags) {
        state ^= t + 0x9e3779b97f4a7c15ULL + (out << 6) + (out >> 2);
        out = splitmix64(state);
    }
    return out;
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace nashbound
