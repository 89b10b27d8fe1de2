#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dcmapf/graph.hpp"

namespace dcmapf {

using AgentId = int;
// Agent-indexed vertex positions.
using Placement = std::vector<Vertex>;

struct Instance {
    Graph graph;
    Placement start;
    Placement target;
    std::optional<int> makespan_limit;

    int agent_count() const { return static_cast<int>(start.size()); }
    // Throws PreconditionError on out-of-range or non-injective placements.
    void check() const;
};

// Placements after turns 1..m; the start placement is not stored.
struct Schedule {
    std::vector<Placement> turns;
    int makespan() const { return static_cast<int>(turns.size()); }
    friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct Solution {
    Schedule schedule;
    int makespan() const { return schedule.makespan(); }
};

enum class Rule { arity, vertex, adjacency, collision, swap, target, limit };

const char* rule_name(Rule rule);

struct Violation {
    int turn = 0;
    Rule rule = Rule::arity;
    std::vector<AgentId> agents;
    std::string describe() const;
};

struct Verdict {
    std::optional<Violation> violation;
    bool ok() const { return !violation.has_value(); }
};

// Pairs (a, b), a < b, exchanging positions between two consecutive placements.
std::vector<std::pair<AgentId, AgentId>> detect_swaps(std::span<const Vertex> prev,
                                                      std::span<const Vertex> next);

// Checks arity, vertex range, closed-neighbourhood moves, collisions and swaps
// for every turn, including the step out of `start`.
Verdict validate_moves(const Graph& g, std::span<const Vertex> start, const Schedule& s);

// validate_moves plus final placement == target and the makespan limit.
Verdict validate_schedule(const Instance& inst, const Schedule& s);

// Agents are partitioned into groups; each group only needs to occupy its
// target set at the end, in any order.
struct AgentGroup {
    std::vector<Vertex> starts;
    std::vector<Vertex> targets;
};

struct ColoredInstance {
    Graph graph;
    std::vector<AgentGroup> groups;
    std::optional<int> makespan_limit;

    int agent_count() const;
    // Agent order used by schedules: groups in order, starts in listed order.
    Placement start_placement() const;
    std::vector<int> group_of_agent() const;
    void check() const;
};

Verdict validate_colored_schedule(const ColoredInstance& inst, const Schedule& s);

}  // namespace dcmapf
