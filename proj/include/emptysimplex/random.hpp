#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace emptysimplex {

using Engine = std::mt19937_64;

/// A (master seed, stream index) pair; determines a random stream completely.
struct Seed {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;

    friend bool operator==(const Seed&, const Seed&) = default;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Child seed for a labelled sub-stream, e.g. derive(seed, {tag, n, trial}).
inline Seed derive(Seed parent, std::initializer_list<std::uint64_t> labels) {
    std::uint64_t s = mix64(parent.stream ^ 0x5bd1e995ULL);
    for (auto label : labels) s = mix64(s ^ mix64(label + 0x632be59bd9b4e019ULL));
    return {parent.master, s};
}

inline Engine make_engine(Seed seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed.master), static_cast<std::uint32_t>(seed.master >> 32),
                      static_cast<std::uint32_t>(seed.stream), static_cast<std::uint32_t>(seed.stream >> 32)};
    return Engine(seq);
}

}  // namespace emptysimplex
