#include "dcmapf/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>

#include "dcmapf/errors.hpp"

namespace dcmapf {

namespace {

// Joint states live back to back in one arena; the hash set stores indices.
class StateArena {
public:
    explicit StateArena(int width) : width_(width) {}

    const Vertex* at(std::uint32_t i) const { return data_.data() + std::size_t(i) * width_; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(parent_.size()); }
    std::uint32_t parent(std::uint32_t i) const { return parent_[i]; }

    std::uint32_t push(const Vertex* state, std::uint32_t parent) {
        data_.insert(data_.end(), state, state + width_);
        parent_.push_back(parent);
        return size() - 1;
    }
    void pop() {
        data_.resize(data_.size() - width_);
        parent_.pop_back();
    }
    int width() const { return width_; }

private:
    int width_;
    std::vector<Vertex> data_;
    std::vector<std::uint32_t> parent_;
};

struct StateHash {
    const StateArena* arena;
    std::size_t operator()(std::uint32_t i) const {
        const Vertex* p = arena->at(i);
        std::size_t h = 1469598103934665603ull;
        for (int k = 0; k < arena->width(); ++k) h = (h ^ std::size_t(p[k])) * 1099511628211ull;
        return h;
    }
};

struct StateEq {
    const StateArena* arena;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
        return std::equal(arena->at(a), arena->at(a) + arena->width(), arena->at(b));
    }
};

class Expander {
public:
    Expander(const Instance& inst, const OracleOptions& options)
        : inst_(inst),
          agents_(inst.agent_count()),
          holder_(inst.graph.size(), -1),
          claimed_(inst.graph.size(), false),
          in_set_(inst.graph.size(), false),
          next_(agents_) {
        for (Vertex v : options.occupancy_set) in_set_[v] = true;
        occupancy_min_ = options.occupancy_set.empty() ? 0 : options.occupancy_min;
    }

    // Calls visit(next) for every legal successor of `cur`, in lexicographic order.
    template <typename Visit>
    void expand(const Vertex* cur, Visit&& visit) {
        for (AgentId a = 0; a < agents_; ++a) holder_[cur[a]] = a;
        cur_ = cur;
        recurse(0, visit);
        for (AgentId a = 0; a < agents_; ++a) holder_[cur[a]] = -1;
    }

    bool occupancy_ok(const Vertex* state) const {
        if (occupancy_min_ <= 0) return true;
        int count = 0;
        for (AgentId a = 0; a < agents_; ++a) count += in_set_[state[a]];
        return count >= occupancy_min_;
    }

private:
    template <typename Visit>
    void recurse(AgentId a, Visit& visit) {
        if (a == agents_) {
            visit(next_.data());
            return;
        }
        Vertex from = cur_[a];
        const auto& nbrs = inst_.graph.neighbors(from);
        // Closed neighbourhood in increasing vertex order.
        auto try_move = [&](Vertex to) {
            if (claimed_[to]) return;
            AgentId other = holder_[to];
            if (other >= 0 && other < a && next_[other] == from) return;
            claimed_[to] = true;
            next_[a] = to;
            recurse(a + 1, visit);
            claimed_[to] = false;
        };
        bool stay_done = false;
        for (Vertex to : nbrs) {
            if (!stay_done && from < to) {
                try_move(from);
                stay_done = true;
            }
            try_move(to);
        }
        if (!stay_done) try_move(from);
    }

    const Instance& inst_;
    int agents_;
    std::vector<AgentId> holder_;
    std::vector<bool> claimed_;
    std::vector<bool> in_set_;
    int occupancy_min_ = 0;
    const Vertex* cur_ = nullptr;
    Placement next_;
};

}  // namespace

std::optional<Solution> optimal_schedule(const Instance& inst, const OracleOptions& options,
                                         SearchStats* stats) {
    inst.check();
    if (options.cap < 0) throw PreconditionError("cap must be non-negative");
    SearchStats local;
    SearchStats& st = stats ? *stats : local;
    st.states = 1;
    if (inst.start == inst.target) return Solution{};

    const int width = inst.agent_count();
    StateArena arena(width);
    std::unordered_set<std::uint32_t, StateHash, StateEq> seen(1024, StateHash{&arena},
                                                              StateEq{&arena});
    seen.insert(arena.push(inst.start.data(), 0));
    Expander expander(inst, options);

    std::uint32_t layer_begin = 0;
    std::optional<std::uint32_t> goal;
    for (int depth = 0; depth < options.cap && !goal; ++depth) {
        std::uint32_t layer_end = arena.size();
        if (layer_begin == layer_end) break;
        for (std::uint32_t i = layer_begin; i < layer_end && !goal; ++i) {
            Placement cur(arena.at(i), arena.at(i) + width);
            expander.expand(cur.data(), [&](const Vertex* next) {
                if (goal) return;
                bool is_goal = std::equal(next, next + width, inst.target.begin());
                if (!is_goal && !expander.occupancy_ok(next)) return;
                std::uint32_t id = arena.push(next, i);
                if (!seen.insert(id).second) {
                    arena.pop();
                    return;
                }
                if (arena.size() > options.state_limit)
                    throw ResourceLimitError("oracle state limit of " +
                                             std::to_string(options.state_limit) + " exceeded");
                if (is_goal) goal = id;
            });
        }
        layer_begin = layer_end;
    }
    st.states = arena.size();
    if (!goal) return std::nullopt;

    Solution sol;
    for (std::uint32_t i = *goal; i != 0; i = arena.parent(i))
        sol.schedule.turns.emplace_back(arena.at(i), arena.at(i) + width);
    std::reverse(sol.schedule.turns.begin(), sol.schedule.turns.end());
    return sol;
}

}  // namespace dcmapf
