#pragma once

#include <cstddef>

namespace rauzy {

/// Limits for graph searches over permutations.
struct SearchOptions {
    std::size_t budget = 10'000'000; // maximum number of vertices visited
    std::size_t workers = 1;
};

} // namespace rauzy
