#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bjdm/random.hpp"

namespace bjdm {

/// Uniform k-subset of `stream` (Vitter's Algorithm R) in one pass.
/// The output keeps no particular order. Requires k <= stream.size().
template <typename T>
void reservoir_sample(std::span<const T> stream, std::size_t k, Rng& rng, std::vector<T>& out) {
    out.assign(stream.begin(), stream.begin() + static_cast<std::ptrdiff_t>(k));
    for (std::size_t seen = k; seen < stream.size(); ++seen) {
        const std::uint64_t slot = rng.uniform_index(seen + 1);
        if (slot < k) out[slot] = stream[seen];
    }
}

}  // namespace bjdm
