#include "dcmapf/model.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "dcmapf/errors.hpp"

namespace dcmapf {

namespace {

void check_placement(const Graph& g, std::span<const Vertex> p, const char* what) {
    std::vector<bool> used(g.size(), false);
    for (Vertex v : p) {
        if (!g.contains(v)) throw PreconditionError(std::string(what) + " vertex out of range");
        if (used[v])
            throw PreconditionError(std::string("duplicate ") + what + " " + std::to_string(v));
        used[v] = true;
    }
}

Verdict fail(int turn, Rule rule, std::vector<AgentId> agents) {
    return Verdict{Violation{turn, rule, std::move(agents)}};
}

}  // namespace

void Instance::check() const {
    if (start.size() != target.size()) throw PreconditionError("start/target arity mismatch");
    check_placement(graph, start, "start");
    check_placement(graph, target, "target");
    if (makespan_limit && *makespan_limit < 0) throw PreconditionError("negative makespan limit");
}

const char* rule_name(Rule rule) {
    switch (rule) {
        case Rule::arity: return "arity";
        case Rule::vertex: return "vertex";
        case Rule::adjacency: return "adjacency";
        case Rule::collision: return "collision";
        case Rule::swap: return "swap";
        case Rule::target: return "target";
        case Rule::limit: return "limit";
    }
    return "unknown";
}

std::string Violation::describe() const {
    std::ostringstream out;
    out << rule_name(rule) << " violation at turn " << turn;
    if (!agents.empty()) {
        out << " (agents";
        for (AgentId a : agents) out << ' ' << a;
        out << ')';
    }
    return out.str();
}

std::vector<std::pair<AgentId, AgentId>> detect_swaps(std::span<const Vertex> prev,
                                                      std::span<const Vertex> next) {
    if (prev.size() != next.size()) throw PreconditionError("placements of different arity");
    std::unordered_map<Vertex, AgentId> at;
    at.reserve(prev.size() * 2);
    for (AgentId a = 0; a < static_cast<AgentId>(prev.size()); ++a) at.emplace(prev[a], a);
    std::vector<std::pair<AgentId, AgentId>> out;
    for (AgentId a = 0; a < static_cast<AgentId>(prev.size()); ++a) {
        if (next[a] == prev[a]) continue;
        auto it = at.find(next[a]);
        if (it == at.end()) continue;
        AgentId b = it->second;
        if (b > a && next[b] == prev[a]) out.emplace_back(a, b);
    }
    return out;
}

Verdict validate_moves(const Graph& g, std::span<const Vertex> start, const Schedule& s) {
    std::vector<int> stamp(g.size(), -1);
    std::vector<AgentId> holder(g.size(), -1);
    std::span<const Vertex> prev = start;
    for (int i = 0; i < s.makespan(); ++i) {
        const Placement& cur = s.turns[i];
        int turn = i + 1;
        if (cur.size() != start.size()) return fail(turn, Rule::arity, {});
        for (AgentId a = 0; a < static_cast<AgentId>(cur.size()); ++a)
            if (!g.contains(cur[a])) return fail(turn, Rule::vertex, {a});
        for (AgentId a = 0; a < static_cast<AgentId>(cur.size()); ++a)
            if (cur[a] != prev[a] && !g.adjacent(cur[a], prev[a]))
                return fail(turn, Rule::adjacency, {a});
        for (AgentId a = 0; a < static_cast<AgentId>(cur.size()); ++a) {
            Vertex v = cur[a];
            if (stamp[v] == turn) return fail(turn, Rule::collision, {holder[v], a});
            stamp[v] = turn;
            holder[v] = a;
        }
        auto swaps = detect_swaps(prev, cur);
        if (!swaps.empty()) return fail(turn, Rule::swap, {swaps[0].first, swaps[0].second});
        prev = cur;
    }
    return {};
}

Verdict validate_schedule(const Instance& inst, const Schedule& s) {
    if (inst.start.size() != inst.target.size()) return fail(0, Rule::arity, {});
    auto moves = validate_moves(inst.graph, inst.start, s);
    if (!moves.ok()) return moves;
    std::span<const Vertex> last = s.turns.empty() ? std::span<const Vertex>(inst.start)
                                                   : std::span<const Vertex>(s.turns.back());
    for (AgentId a = 0; a < inst.agent_count(); ++a)
        if (last[a] != inst.target[a]) return fail(s.makespan(), Rule::target, {a});
    if (inst.makespan_limit && s.makespan() > *inst.makespan_limit)
        return fail(*inst.makespan_limit + 1, Rule::limit, {});
    return {};
}

int ColoredInstance::agent_count() const {
    int n = 0;
    for (const auto& g : groups) n += static_cast<int>(g.starts.size());
    return n;
}

Placement ColoredInstance::start_placement() const {
    Placement p;
    for (const auto& g : groups) p.insert(p.end(), g.starts.begin(), g.starts.end());
    return p;
}

std::vector<int> ColoredInstance::group_of_agent() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(groups.size()); ++i)
        out.insert(out.end(), groups[i].starts.size(), i);
    return out;
}

void ColoredInstance::check() const {
    Placement starts = start_placement();
    Placement targets;
    for (const auto& g : groups) {
        if (g.starts.size() != g.targets.size())
            throw PreconditionError("group start/target count mismatch");
        targets.insert(targets.end(), g.targets.begin(), g.targets.end());
    }
    check_placement(graph, starts, "start");
    check_placement(graph, targets, "target");
    if (makespan_limit && *makespan_limit < 0) throw PreconditionError("negative makespan limit");
}

Verdict validate_colored_schedule(const ColoredInstance& inst, const Schedule& s) {
    Placement start = inst.start_placement();
    auto moves = validate_moves(inst.graph, start, s);
    if (!moves.ok()) return moves;
    const Placement& last = s.turns.empty() ? start : s.turns.back();
    std::size_t offset = 0;
    for (const auto& group : inst.groups) {
        std::vector<Vertex> reached(last.begin() + offset,
                                    last.begin() + offset + group.starts.size());
        std::vector<Vertex> wanted = group.targets;
        std::sort(reached.begin(), reached.end());
        std::sort(wanted.begin(), wanted.end());
        if (reached != wanted) {
            std::vector<AgentId> agents;
            for (std::size_t i = 0; i < group.starts.size(); ++i)
                if (!std::binary_search(wanted.begin(), wanted.end(), last[offset + i]))
                    agents.push_back(static_cast<AgentId>(offset + i));
            return fail(s.makespan(), Rule::target, agents);
        }
        offset += group.starts.size();
    }
    if (inst.makespan_limit && s.makespan() > *inst.makespan_limit)
        return fail(*inst.makespan_limit + 1, Rule::limit, {});
    return {};
}

}  // namespace dcmapf
