#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "dcmapf/model.hpp"
#include "dcmapf/oracle.hpp"

namespace dcmapf {

// Shortest schedule of makespan <= bound in which every intermediate placement
// puts at least `min_occupancy` agents on `occupied_set`; the start and target
// placements are exempt. Implemented as a bidirectional breadth-first search
// over joint placements. Throws ResourceLimitError past `state_limit` states.
std::optional<Schedule> config_shortest_schedule(const Instance& inst,
                                                 std::span<const Vertex> occupied_set,
                                                 int min_occupancy, int bound,
                                                 std::size_t state_limit = kDefaultStateLimit,
                                                 SearchStats* stats = nullptr);

}  // namespace dcmapf
