#pragma once

#include <optional>
#include <vector>

#include "dcmapf/model.hpp"

namespace brute {

using dcmapf::Graph;
using dcmapf::Instance;
using dcmapf::Placement;
using dcmapf::Vertex;

// Smallest vertex cover size by subset enumeration (n <= 20).
int vertex_cover_number(const Graph& g);
bool is_vertex_cover(const Graph& g, const std::vector<Vertex>& cover);
// Smallest number of deletions leaving a clique, by subset enumeration.
int distance_to_clique(const Graph& g);

// All placements reachable in one turn: every agent stays or steps to a
// neighbour, no two agents share a vertex, no two adjacent agents exchange.
std::vector<Placement> successors(const Graph& g, const Placement& p);

// Optimal makespan by growing the set of placements reachable within d turns.
// nullopt when infeasible within `cap`. Intermediate placements other than the
// start and target must put at least `min_occupancy` agents on `occupied`.
std::optional<int> optimal_makespan(const Instance& inst, int cap,
                                    const std::vector<Vertex>& occupied = {},
                                    int min_occupancy = 0);

// Vertices u, v of the clique part have the same closed neighbourhood in
// the modulator.
bool same_modulator_neighbourhood(const Graph& g, const std::vector<Vertex>& modulator, Vertex u,
                                  Vertex v);

}  // namespace brute
