#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dcmapf/graph.hpp"
#include "dcmapf/kernel.hpp"
#include "dcmapf/model.hpp"

namespace dcmapf {

using VertexPair = std::pair<Vertex, Vertex>;

// Perfect matching from `sources` onto `sinks` (equal sizes) avoiding the
// `forbidden` (source, sink) pairs. Augmenting paths, scanning in id order.
std::optional<std::vector<VertexPair>> perfect_matching(std::span<const Vertex> sources,
                                                        std::span<const Vertex> sinks,
                                                        std::span<const VertexPair> forbidden);

// Replaces every pair of edges u->w, w->u (u != w) by the loops u->u, w->w.
// Returns the number of replacements.
int fix_mutual_exchanges(std::vector<VertexPair>& matching);

// One turn of the lift: non-core agents move from `free_prev` into
// `free_next` without swapping with core agents or with each other.
struct LiftFrame {
    std::vector<Vertex> free_prev;
    std::vector<Vertex> free_next;
    std::vector<Vertex> sources;
    std::vector<Vertex> sinks;
    std::vector<VertexPair> forbidden;
    std::vector<VertexPair> matching;  // sorted by source
    int exchange_fixes = 0;

    Vertex image(Vertex source) const;
};

// `core_prev[i]` / `core_next[i]` are the positions of core agent i on the two
// turns; `occupied_prev` are the current non-core positions.
LiftFrame plan_frame(std::span<const Vertex> free_prev, std::span<const Vertex> free_next,
                     std::span<const Vertex> occupied_prev, std::span<const Vertex> core_prev,
                     std::span<const Vertex> core_next);

// Resolves swaps between the last two placements of `partial` (the last one
// must be the target) by modifying turn m-1. Every offending pair must
// contain an agent outside `core`.
Schedule repair_final_swaps(const Instance& inst, const CliqueSplit& split, const Schedule& partial,
                            std::span<const AgentId> core);

// Maps a kernel schedule back to the full instance, routing non-core agents
// through the free clique vertices of every turn.
Schedule lift_schedule(const Instance& inst, const CliqueSplit& split, const Kernel& kernel,
                       const Schedule& kernel_schedule);

}  // namespace dcmapf
