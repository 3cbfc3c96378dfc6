#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dcid {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// FNV-1a over a stream label.
constexpr std::uint64_t label_hash(std::string_view label) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Counter-hash seed derivation. Every per-stream and per-run seed in the
// project comes from here, so results never depend on execution order.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::string_view label) noexcept
{
    return mix64(parent ^ mix64(label_hash(label)));
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t counter) noexcept
{
    return mix64(parent ^ mix64(counter + 0x632be59bd9b4e019ULL));
}

inline Rng make_rng(std::uint64_t parent, std::string_view label)
{
    return Rng{derive_seed(parent, label)};
}

} // namespace dcid
