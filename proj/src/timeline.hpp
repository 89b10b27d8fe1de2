#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "dcmapf/model.hpp"

namespace dcmapf::detail {

// Per-agent positions over turns 0..horizon with a vertex occupancy census.
// Agents hold their last assigned vertex for the rest of the horizon.
class Timeline {
public:
    Timeline(const Instance& inst, int horizon)
        : horizon_(horizon),
          pos_(inst.agent_count(), std::vector<Vertex>(horizon + 1)),
          census_(inst.graph.size(), std::vector<int>(horizon + 1, 0)) {
        for (AgentId a = 0; a < inst.agent_count(); ++a) {
            std::fill(pos_[a].begin(), pos_[a].end(), inst.start[a]);
            for (int t = 0; t <= horizon; ++t) ++census_[inst.start[a]][t];
        }
    }

    int horizon() const { return horizon_; }
    Vertex at(AgentId a, int turn) const { return pos_[a][turn]; }
    int census(Vertex v, int turn) const { return census_[v][turn]; }
    bool busy(Vertex v, int turn) const { return census_[v][turn] > 0; }

    // Puts the agent on v from `turn` onward. Turns before 1 are ignored.
    void place(AgentId a, int turn, Vertex v) {
        if (turn > horizon_) throw std::logic_error("move beyond the schedule horizon");
        for (int t = std::max(turn, 1); t <= horizon_; ++t) {
            --census_[pos_[a][t]][t];
            pos_[a][t] = v;
            ++census_[v][t];
        }
    }

    // path[k] is the position at turn first + k.
    void follow(AgentId a, int first, std::span<const Vertex> path) {
        for (std::size_t k = 0; k < path.size(); ++k) place(a, first + static_cast<int>(k), path[k]);
    }

    Schedule schedule() const {
        Schedule s;
        for (int t = 1; t <= horizon_; ++t) {
            Placement p(pos_.size());
            for (std::size_t a = 0; a < pos_.size(); ++a) p[a] = pos_[a][t];
            s.turns.push_back(std::move(p));
        }
        return s;
    }

private:
    int horizon_;
    std::vector<std::vector<Vertex>> pos_;
    std::vector<std::vector<int>> census_;
};

}  // namespace dcmapf::detail
