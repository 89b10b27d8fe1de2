#include "dcmapf/search.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "dcmapf/errors.hpp"

namespace dcmapf {

namespace {

using Key = std::u16string;

Key encode(std::span<const Vertex> p) {
    Key k(p.size(), u'\0');
    for (std::size_t i = 0; i < p.size(); ++i) k[i] = static_cast<char16_t>(p[i]);
    return k;
}

Placement decode(const Key& k) {
    Placement p(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) p[i] = static_cast<Vertex>(k[i]);
    return p;
}

// Enumerates legal joint moves out of one placement.
class Successors {
public:
    explicit Successors(const Graph& g) : g_(g), owner_(g.size(), -1), taken_(g.size(), 0) {}

    template <typename Emit>
    void each(const Placement& from, Emit&& emit) {
        from_ = &from;
        to_.assign(from.size(), -1);
        for (AgentId a = 0; a < static_cast<AgentId>(from.size()); ++a) owner_[from[a]] = a;
        step(0, emit);
        for (Vertex v : from) owner_[v] = -1;
    }

private:
    template <typename Emit>
    void step(AgentId a, Emit& emit) {
        const Placement& from = *from_;
        if (a == static_cast<AgentId>(from.size())) {
            emit(to_);
            return;
        }
        auto attempt = [&](Vertex v) {
            if (taken_[v]) return;
            AgentId o = owner_[v];
            // The earlier agent o moved onto our vertex while we take its.
            if (o >= 0 && o < a && to_[o] == from[a]) return;
            taken_[v] = 1;
            to_[a] = v;
            step(a + 1, emit);
            taken_[v] = 0;
        };
        attempt(from[a]);
        for (Vertex v : g_.neighbors(from[a])) attempt(v);
    }

    const Graph& g_;
    std::vector<AgentId> owner_;
    std::vector<char> taken_;
    const Placement* from_ = nullptr;
    Placement to_;
};

// True when `to` follows `from` in one legal turn.
bool one_turn(const Graph& g, const Placement& from, const Placement& to) {
    for (std::size_t a = 0; a < from.size(); ++a)
        if (from[a] != to[a] && !g.adjacent(from[a], to[a])) return false;
    return detect_swaps(from, to).empty();
}

// Opposite frontiers up to this size are probed directly before enumerating.
constexpr std::size_t kProbeLimit = 256;

struct Side {
    std::unordered_map<Key, Key> parent;
    std::vector<Key> frontier;
    int depth = 0;
};

}  // namespace

std::optional<Schedule> config_shortest_schedule(const Instance& inst,
                                                 std::span<const Vertex> occupied_set,
                                                 int min_occupancy, int bound,
                                                 std::size_t state_limit, SearchStats* stats) {
    inst.check();
    if (bound < 0) throw PreconditionError("bound must be non-negative");
    if (inst.graph.size() > 65535) throw PreconditionError("kernel too large to encode");
    SearchStats local;
    SearchStats& st = stats ? *stats : local;
    st.states = 1;
    if (inst.start == inst.target) return Schedule{};

    std::vector<char> marked(inst.graph.size(), 0);
    for (Vertex v : occupied_set) marked[v] = 1;
    const Key start = encode(inst.start);
    const Key goal = encode(inst.target);
    auto allowed = [&](const Placement& p, const Key& k) {
        if (k == start || k == goal || min_occupancy <= 0) return true;
        int n = 0;
        for (Vertex v : p) n += marked[v];
        return n >= min_occupancy;
    };

    Side fwd, bwd;
    fwd.parent.emplace(start, start);
    fwd.frontier.push_back(start);
    bwd.parent.emplace(goal, goal);
    bwd.frontier.push_back(goal);
    st.states = 2;
    Successors succ(inst.graph);
    std::optional<Key> meet;

    while (!meet && fwd.depth + bwd.depth < bound) {
        bool forward = fwd.frontier.size() <= bwd.frontier.size();
        Side& side = forward ? fwd : bwd;
        const Side& other = forward ? bwd : fwd;
        std::vector<Key> next;
        for (const Key& k : side.frontier) {
            Placement cur = decode(k);
            if (other.frontier.size() <= kProbeLimit) {
                for (const Key& ok : other.frontier)
                    if (one_turn(inst.graph, cur, decode(ok))) {
                        side.parent.emplace(ok, k);
                        meet = ok;
                        break;
                    }
                if (meet) break;
            }
            succ.each(cur, [&](const Placement& to) {
                if (meet) return;
                Key tk = encode(to);
                if (side.parent.count(tk) || !allowed(to, tk)) return;
                side.parent.emplace(tk, k);
                if (++st.states > state_limit)
                    throw ResourceLimitError("configuration search state limit of " +
                                             std::to_string(state_limit) + " exceeded");
                if (other.parent.count(tk)) {
                    meet = tk;
                }
                next.push_back(std::move(tk));
            });
            if (meet) break;
        }
        ++side.depth;
        side.frontier = std::move(next);
        if (!meet && side.frontier.empty()) return std::nullopt;
    }
    if (!meet) return std::nullopt;

    std::vector<Key> path;
    for (Key k = *meet; k != start; k = fwd.parent.at(k)) path.push_back(k);
    std::reverse(path.begin(), path.end());
    for (Key k = *meet; k != goal;) {
        k = bwd.parent.at(k);
        path.push_back(k);
    }
    Schedule s;
    for (const Key& k : path) s.turns.push_back(decode(k));
    return s;
}

}  // namespace dcmapf
