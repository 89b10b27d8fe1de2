#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dcmapf/model.hpp"
#include "dcmapf/registry.hpp"

namespace dcmapf {

struct ThreePartitionInstance {
    int n = 0;
    std::vector<std::int64_t> betas;  // 3n positive values
    std::int64_t phi = 0;             // sum / n
};

// Validates size and divisibility; n must be at least 2.
ThreePartitionInstance make_three_partition(std::vector<std::int64_t> betas);

// Maps every value to 6 (beta + 2 phi). Afterwards all values are multiples
// of 6 and lie strictly between phi/4 and phi/2 (throws otherwise).
ThreePartitionInstance preprocess_three_partition(const ThreePartitionInstance& tp);

struct GeneratedInstance {
    Instance instance;
    GadgetRegistry registry;
};

GeneratedInstance build_three_partition_instance(const ThreePartitionInstance& tp);

// 1-based value indices, n triples each summing to phi.
using Triple = std::array<int, 3>;

Schedule three_partition_forward_schedule(const Instance& inst, const GadgetRegistry& registry,
                                          std::span<const Triple> partition);

// A single red edge resolved on its own, starting at turn tau.
struct RedEdgeTiming {
    int end = 0;                 // turn at which the last agent is home
    int neighbour_first = 0;     // first turn the neighbour vertex is used
    int neighbour_last = 0;      // last turn the neighbour vertex is used
};

// Agents a_1..a_c of one red edge attached to `hub`; a_1 waits on `neighbour`.
Schedule red_edge_schedule(const Instance& inst, std::span<const AgentId> edge, Vertex hub,
                           Vertex neighbour, int tau, int horizon, RedEdgeTiming* timing = nullptr);

}  // namespace dcmapf
