#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dcmapf/graph.hpp"
#include "dcmapf/model.hpp"

namespace dcmapf {

// 3 * (2 dc + 2)^dc + 2. Throws ResourceLimitError for dc > 12.
std::int64_t makespan_bound(int dc);
// (10 dc)^(dc + 1), and 0 for dc = 0. Throws ResourceLimitError on overflow.
std::int64_t kappa(int dc);

// Agents flagged anonymous only need to end somewhere on `anon_targets`.
// `target` keeps the original targets of every agent.
struct PamapfInstance {
    Graph graph;
    Placement start;
    Placement target;
    std::vector<bool> anonymous;
    std::vector<Vertex> anon_targets;  // sorted

    int agent_count() const { return static_cast<int>(start.size()); }
    std::vector<AgentId> named_agents() const;
    std::vector<AgentId> anonymous_agents() const;
};

PamapfInstance build_pamapf(const Instance& inst, const CliqueSplit& split);
Verdict validate_pamapf_schedule(const PamapfInstance& pam, const Schedule& s);

// Appends at most two clique turns that move the anonymous agents onto their
// own targets.
Schedule extend_pamapf_solution(const PamapfInstance& pam, const Schedule& s,
                                const CliqueSplit& split);

inline constexpr int kAnonymousSlot = -1;
inline constexpr int kEmptySlot = -2;

// One entry per modulator vertex (in split order): a named agent id,
// kAnonymousSlot or kEmptySlot.
using PlacementTypeKey = std::vector<int>;

PlacementTypeKey placement_type_key(const PamapfInstance& pam, std::span<const Vertex> placement,
                                    std::span<const Vertex> modulator);

// Shortens `s` until no placement type occurs more than three times among
// turns 0..m. Requires a clique part of at least four vertices.
Schedule compress_schedule(const PamapfInstance& pam, const CliqueSplit& split, const Schedule& s);

struct VertexType {
    std::vector<Vertex> signature;  // neighbours in the modulator
    std::vector<Vertex> members;    // clique vertices, sorted
};

struct AgentType {
    bool touches_modulator = false;
    int from = -1;  // start vertex type
    int to = -1;    // target vertex type
    friend bool operator==(const AgentType&, const AgentType&) = default;
};

struct Typing {
    std::vector<VertexType> types;  // ordered by smallest member
    std::vector<int> type_of;       // per vertex, -1 on the modulator
    std::vector<AgentType> agents;
};

Typing classify_types(const Instance& inst, const CliqueSplit& split);

struct CoreOptions {
    // Per agent type cap for the initial set; negative means kappa(dc).
    std::int64_t kappa = -1;
    int small_instance = 100;
};

struct CoreSelection {
    std::vector<AgentId> initial;              // sorted
    std::vector<std::vector<AgentId>> rounds;  // sets after each absorption
    std::vector<AgentId> fixpoint;
    std::vector<AgentId> core;
};

CoreSelection select_core_agents(const Instance& inst, const CliqueSplit& split,
                                 const Typing& typing, const CoreOptions& options = {});

struct Kernel {
    Instance instance;                     // on the induced graph, core agents only
    std::vector<Vertex> to_original_vertex;
    std::vector<Vertex> to_local_vertex;   // -1 outside the kernel
    std::vector<AgentId> to_original_agent;
    std::vector<Vertex> modulator;         // local ids
    std::vector<std::vector<Vertex>> kept; // per vertex type, original ids
    int occupancy = 0;
};

Kernel build_kernel(const Instance& inst, const CliqueSplit& split, const Typing& typing,
                    std::span<const AgentId> core);

}  // namespace dcmapf
