#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bjdm {

inline std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Order-sensitive hash of a list of 32-bit ids. Used only for bucketing;
/// containers keyed with it always compare full content.
inline std::uint64_t hash_content(std::span<const std::uint32_t> content) noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ content.size();
    for (std::uint32_t v : content) h = mix64(h + 0x9e3779b97f4a7c15ULL + v);
    return h;
}

struct ContentHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
        return static_cast<std::size_t>(hash_content(v));
    }
};

}  // namespace bjdm
