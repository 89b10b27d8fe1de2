#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dcmapf/model.hpp"

namespace dcmapf {

// Pairs (a, b), a < b, with start[a] == target[b] and start[b] == target[a].
std::vector<std::pair<AgentId, AgentId>> swapping_pairs(const Instance& inst);

// Optimal schedule on a complete graph. With at least four vertices the result
// always exists and has makespan at most 2; smaller cliques use the oracle
// and may be infeasible. Throws PreconditionError if the graph is not complete.
std::optional<Solution> solve_clique(const Instance& inst);

struct NamedAgent {
    Vertex start;
    Vertex target;
};

// Named agents keep their targets; anonymous agents (given by their starts)
// only need to fill `anon_targets`. The k-th smallest anonymous start is sent
// to the k-th smallest anonymous target. Agent order of the result: named
// agents first, then anonymous agents in the order of `anon_starts`.
Schedule solve_clique_anonymous(const Graph& g, std::span<const NamedAgent> named,
                                std::span<const Vertex> anon_starts,
                                std::span<const Vertex> anon_targets);

}  // namespace dcmapf
