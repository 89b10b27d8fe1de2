#include "dcmapf/kernel.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

#include "dcmapf/clique.hpp"
#include "dcmapf/errors.hpp"

namespace dcmapf {

namespace {

std::int64_t checked_pow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::int64_t>::max() / base)
            throw ResourceLimitError("integer overflow in bound computation");
        r *= base;
    }
    return r;
}

const Placement& placement_at(const Placement& start, const Schedule& s, int turn) {
    return turn == 0 ? start : s.turns[turn - 1];
}

}  // namespace

std::int64_t makespan_bound(int dc) {
    if (dc < 0) throw PreconditionError("negative distance to clique");
    if (dc > 12) throw ResourceLimitError("makespan bound overflows for dc > 12");
    return 3 * checked_pow(2 * dc + 2, dc) + 2;
}

std::int64_t kappa(int dc) {
    if (dc < 0) throw PreconditionError("negative distance to clique");
    if (dc == 0) return 0;
    return checked_pow(10 * static_cast<std::int64_t>(dc), dc + 1);
}

std::vector<AgentId> PamapfInstance::named_agents() const {
    std::vector<AgentId> out;
    for (AgentId a = 0; a < agent_count(); ++a)
        if (!anonymous[a]) out.push_back(a);
    return out;
}

std::vector<AgentId> PamapfInstance::anonymous_agents() const {
    std::vector<AgentId> out;
    for (AgentId a = 0; a < agent_count(); ++a)
        if (anonymous[a]) out.push_back(a);
    return out;
}

PamapfInstance build_pamapf(const Instance& inst, const CliqueSplit& split) {
    PamapfInstance pam;
    pam.graph = inst.graph;
    pam.start = inst.start;
    pam.target = inst.target;
    pam.anonymous.assign(inst.agent_count(), false);
    std::vector<AgentId> rest;
    for (AgentId a = 0; a < inst.agent_count(); ++a)
        if (!split.in_modulator[inst.start[a]] && !split.in_modulator[inst.target[a]])
            rest.push_back(a);
    if (rest.size() < 4) return pam;
    for (AgentId a : rest) {
        pam.anonymous[a] = true;
        pam.anon_targets.push_back(inst.target[a]);
    }
    std::sort(pam.anon_targets.begin(), pam.anon_targets.end());
    return pam;
}

Verdict validate_pamapf_schedule(const PamapfInstance& pam, const Schedule& s) {
    auto moves = validate_moves(pam.graph, pam.start, s);
    if (!moves.ok()) return moves;
    const Placement& last = placement_at(pam.start, s, s.makespan());
    std::vector<Vertex> reached;
    for (AgentId a = 0; a < pam.agent_count(); ++a) {
        if (pam.anonymous[a])
            reached.push_back(last[a]);
        else if (last[a] != pam.target[a])
            return Verdict{Violation{s.makespan(), Rule::target, {a}}};
    }
    std::sort(reached.begin(), reached.end());
    if (reached != pam.anon_targets) return Verdict{Violation{s.makespan(), Rule::target, {}}};
    return {};
}

Schedule extend_pamapf_solution(const PamapfInstance& pam, const Schedule& s,
                                const CliqueSplit& split) {
    (void)split;
    auto anon = pam.anonymous_agents();
    if (anon.empty()) return s;
    if (anon.size() < 4) throw PreconditionError("anonymous agent set must be empty or >= 4");
    const Placement& last = placement_at(pam.start, s, s.makespan());
    const auto& area = pam.anon_targets;
    auto local = [&](Vertex v) {
        auto it = std::lower_bound(area.begin(), area.end(), v);
        if (it == area.end() || *it != v)
            throw PreconditionError("anonymous agent not on the anonymous target set");
        return static_cast<Vertex>(it - area.begin());
    };
    Instance inner;
    inner.graph = pam.graph.induced(area);
    for (AgentId b : anon) {
        inner.start.push_back(local(last[b]));
        inner.target.push_back(local(pam.target[b]));
    }
    auto sol = solve_clique(inner);
    Schedule out = s;
    for (const auto& turn : sol->schedule.turns) {
        Placement p = last;
        for (std::size_t i = 0; i < anon.size(); ++i) p[anon[i]] = area[turn[i]];
        out.turns.push_back(std::move(p));
    }
    return out;
}

PlacementTypeKey placement_type_key(const PamapfInstance& pam, std::span<const Vertex> placement,
                                    std::span<const Vertex> modulator) {
    PlacementTypeKey key(modulator.size(), kEmptySlot);
    for (AgentId a = 0; a < static_cast<AgentId>(placement.size()); ++a) {
        auto it = std::lower_bound(modulator.begin(), modulator.end(), placement[a]);
        if (it == modulator.end() || *it != placement[a]) continue;
        key[it - modulator.begin()] = pam.anonymous[a] ? kAnonymousSlot : a;
    }
    return key;
}

Schedule compress_schedule(const PamapfInstance& pam, const CliqueSplit& split, const Schedule& s) {
    const auto& clique = split.clique;
    if (clique.size() < 4) throw PreconditionError("compression needs a clique part of size >= 4");
    Graph clique_graph = pam.graph.induced(clique);
    auto local = [&](Vertex v) {
        return static_cast<Vertex>(std::lower_bound(clique.begin(), clique.end(), v) -
                                   clique.begin());
    };

    Schedule cur = s;
    while (true) {
        const int m = cur.makespan();
        std::map<PlacementTypeKey, std::vector<int>> seen;
        std::vector<PlacementTypeKey> keys;
        for (int i = 0; i <= m; ++i) {
            keys.push_back(placement_type_key(pam, placement_at(pam.start, cur, i), split.modulator));
            seen[keys.back()].push_back(i);
        }
        int p = -1, q = -1;
        for (int i = 0; i <= m && p < 0; ++i) {
            const auto& occ = seen[keys[i]];
            if (occ.size() > 3) {
                p = occ.front();
                q = occ.back();
            }
        }
        if (p < 0) return cur;

        const Placement& sp = placement_at(pam.start, cur, p);
        const Placement& sq = placement_at(pam.start, cur, q);
        std::vector<AgentId> named_in, anon_in;
        std::vector<NamedAgent> named;
        std::vector<Vertex> anon_starts, anon_targets;
        for (AgentId a = 0; a < pam.agent_count(); ++a) {
            if (split.in_modulator[sp[a]]) continue;
            if (pam.anonymous[a]) {
                anon_in.push_back(a);
                anon_starts.push_back(local(sp[a]));
            } else {
                named_in.push_back(a);
                named.push_back({local(sp[a]), local(sq[a])});
            }
        }
        for (AgentId a = 0; a < pam.agent_count(); ++a)
            if (pam.anonymous[a] && !split.in_modulator[sq[a]]) anon_targets.push_back(local(sq[a]));
        Schedule inner = solve_clique_anonymous(clique_graph, named, anon_starts, anon_targets);

        Schedule next;
        next.turns.assign(cur.turns.begin(), cur.turns.begin() + p);
        Placement last = sp;
        for (const auto& turn : inner.turns) {
            for (std::size_t i = 0; i < named_in.size(); ++i) last[named_in[i]] = clique[turn[i]];
            for (std::size_t i = 0; i < anon_in.size(); ++i)
                last[anon_in[i]] = clique[turn[named_in.size() + i]];
            next.turns.push_back(last);
        }
        // Each agent now follows the old trajectory of whoever sat on its
        // current vertex at turn q.
        std::vector<AgentId> holder(pam.graph.size(), -1);
        for (AgentId a = 0; a < pam.agent_count(); ++a) holder[sq[a]] = a;
        std::vector<AgentId> follow(pam.agent_count());
        for (AgentId a = 0; a < pam.agent_count(); ++a) {
            follow[a] = holder[last[a]];
            if (follow[a] < 0 || pam.anonymous[follow[a]] != pam.anonymous[a] ||
                (!pam.anonymous[a] && follow[a] != a))
                throw std::logic_error("compression remap is not type preserving");
        }
        for (int j = q + 1; j <= m; ++j) {
            const Placement& old = cur.turns[j - 1];
            Placement p2(pam.agent_count());
            for (AgentId a = 0; a < pam.agent_count(); ++a) p2[a] = old[follow[a]];
            next.turns.push_back(std::move(p2));
        }
        if (next.makespan() >= m) throw std::logic_error("compression step did not shorten");
        cur = std::move(next);
    }
}

Typing classify_types(const Instance& inst, const CliqueSplit& split) {
    Typing typing;
    const Graph& g = inst.graph;
    typing.type_of.assign(g.size(), -1);
    std::map<std::vector<Vertex>, int> index;
    for (Vertex v : split.clique) {
        std::vector<Vertex> sig;
        for (Vertex u : g.neighbors(v))
            if (split.in_modulator[u]) sig.push_back(u);
        auto [it, fresh] = index.emplace(sig, static_cast<int>(typing.types.size()));
        if (fresh) typing.types.push_back({sig, {}});
        typing.types[it->second].members.push_back(v);
        typing.type_of[v] = it->second;
    }
    for (AgentId a = 0; a < inst.agent_count(); ++a) {
        AgentType t;
        t.touches_modulator = split.in_modulator[inst.start[a]] || split.in_modulator[inst.target[a]];
        if (!t.touches_modulator) {
            t.from = typing.type_of[inst.start[a]];
            t.to = typing.type_of[inst.target[a]];
        }
        typing.agents.push_back(t);
    }
    return typing;
}

CoreSelection select_core_agents(const Instance& inst, const CliqueSplit& split,
                                 const Typing& typing, const CoreOptions& options) {
    const int agents = inst.agent_count();
    const std::int64_t cap = options.kappa >= 0 ? options.kappa : kappa(split.distance());
    CoreSelection out;
    std::vector<bool> chosen(agents, false);
    std::map<std::pair<int, int>, std::int64_t> taken;
    for (AgentId a = 0; a < agents; ++a) {
        const AgentType& t = typing.agents[a];
        if (t.touches_modulator || taken[{t.from, t.to}]++ < cap) chosen[a] = true;
    }
    auto collect = [&] {
        std::vector<AgentId> v;
        for (AgentId a = 0; a < agents; ++a)
            if (chosen[a]) v.push_back(a);
        return v;
    };
    out.initial = collect();
    std::int64_t size = static_cast<std::int64_t>(out.initial.size());

    const int type_count = static_cast<int>(typing.types.size());
    while (true) {
        int pick = -1;
        for (int tau = 0; tau < type_count && pick < 0; ++tau) {
            if (static_cast<std::int64_t>(typing.types[tau].members.size()) > 3 * size) continue;
            for (AgentId a = 0; a < agents; ++a) {
                const AgentType& t = typing.agents[a];
                if (!chosen[a] && !t.touches_modulator && (t.from == tau || t.to == tau)) {
                    pick = tau;
                    break;
                }
            }
        }
        if (pick < 0) break;
        for (AgentId a = 0; a < agents; ++a) {
            const AgentType& t = typing.agents[a];
            if (!t.touches_modulator && (t.from == pick || t.to == pick)) chosen[a] = true;
        }
        out.rounds.push_back(collect());
        size = static_cast<std::int64_t>(out.rounds.back().size());
    }
    out.fixpoint = collect();
    if (agents <= std::max<std::int64_t>(2 * size, options.small_instance)) {
        out.core.resize(agents);
        for (AgentId a = 0; a < agents; ++a) out.core[a] = a;
    } else {
        out.core = out.fixpoint;
    }
    return out;
}

Kernel build_kernel(const Instance& inst, const CliqueSplit& split, const Typing& typing,
                    std::span<const AgentId> core) {
    Kernel k;
    const Graph& g = inst.graph;
    const std::int64_t room = 3 * static_cast<std::int64_t>(core.size());
    std::vector<bool> endpoint(g.size(), false);
    for (AgentId a : core) endpoint[inst.start[a]] = endpoint[inst.target[a]] = true;
    std::vector<bool> keep(g.size(), false);
    for (Vertex v : split.modulator) keep[v] = true;
    for (const auto& type : typing.types) {
        std::vector<Vertex> kept;
        if (static_cast<std::int64_t>(type.members.size()) <= room) {
            kept = type.members;
        } else {
            for (Vertex v : type.members)
                if (endpoint[v]) kept.push_back(v);
            for (Vertex v : type.members) {
                if (static_cast<std::int64_t>(kept.size()) >= room) break;
                if (!endpoint[v]) kept.push_back(v);
            }
            std::sort(kept.begin(), kept.end());
        }
        for (Vertex v : kept) keep[v] = true;
        k.kept.push_back(std::move(kept));
    }
    k.to_local_vertex.assign(g.size(), -1);
    for (Vertex v = 0; v < g.size(); ++v)
        if (keep[v]) {
            k.to_local_vertex[v] = static_cast<Vertex>(k.to_original_vertex.size());
            k.to_original_vertex.push_back(v);
        }
    k.instance.graph = g.induced(k.to_original_vertex);
    for (AgentId a : core) {
        Vertex s = k.to_local_vertex[inst.start[a]];
        Vertex t = k.to_local_vertex[inst.target[a]];
        if (s < 0 || t < 0) throw std::logic_error("core agent endpoint outside kernel");
        k.instance.start.push_back(s);
        k.instance.target.push_back(t);
        k.to_original_agent.push_back(a);
    }
    for (Vertex v : split.modulator) k.modulator.push_back(k.to_local_vertex[v]);
    k.occupancy = std::max(0, inst.agent_count() - static_cast<int>(split.clique.size()));
    return k;
}

}  // namespace dcmapf
