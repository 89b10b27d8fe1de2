#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dcmapf/model.hpp"

namespace dcmapf {

inline constexpr std::size_t kDefaultStateLimit = 50'000'000;

struct OracleOptions {
    int cap = 64;
    std::size_t state_limit = kDefaultStateLimit;
    // Intermediate states (not start, not target) must place at least
    // `occupancy_min` agents on `occupancy_set`. Ignored when the set is empty.
    std::vector<Vertex> occupancy_set;
    int occupancy_min = 0;
};

struct SearchStats {
    std::size_t states = 0;
};

// Breadth-first search over joint placements. Returns a minimum-makespan
// schedule or nullopt if none exists within `cap` turns. Throws
// ResourceLimitError when more than `state_limit` states are generated.
std::optional<Solution> optimal_schedule(const Instance& inst, const OracleOptions& options,
                                         SearchStats* stats = nullptr);

inline std::optional<Solution> optimal_schedule(const Instance& inst, int cap) {
    OracleOptions options;
    options.cap = cap;
    return optimal_schedule(inst, options);
}

}  // namespace dcmapf
