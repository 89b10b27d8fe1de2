#include "dcmapf/pancake.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <functional>
#include <queue>

#include "dcmapf/errors.hpp"

namespace dcmapf {

namespace {

struct Trip {
    Vertex start;
    Vertex target;
};

// Graph, names and auxiliary agents shared by the plain and colored variants.
struct Layout {
    Graph graph;
    GadgetRegistry registry;
    int n = 0, n_plus = 0, horizon = 0;
    Vertex hub = 0;
    std::vector<Vertex> a_path, b_path, c_path;  // index 0 is next to the hub
    std::vector<std::vector<Trip>> aux;            // bB, bC, bA1, bA2
};

const std::array<const char*, 4> kAuxNames{"bB", "bC", "bA1", "bA2"};

// 0: push, 1: reverse, 2: pop.
int phase_of(long i, int n_plus) { return static_cast<int>((i % (3L * n_plus)) / n_plus); }

Layout make_layout(int n, int k) {
    Layout lay;
    lay.n = n;
    lay.n_plus = n + 2;
    lay.horizon = 3 * lay.n_plus * k;
    const int L = lay.horizon;
    const int count = (n + 1) + 2 * (L + 1) + 1 + 4 * (2 * L + 1);
    lay.graph = Graph(count);
    Vertex next = 0;
    auto fresh = [&](const std::string& name) {
        lay.registry.name_vertex(name, next);
        return next++;
    };
    auto path = [&](const std::string& base, int lo, int hi) {
        std::vector<Vertex> vs;
        for (int i = lo; i <= hi; ++i) vs.push_back(fresh(indexed(base, i)));
        for (std::size_t i = 0; i + 1 < vs.size(); ++i) lay.graph.add_edge(vs[i], vs[i + 1]);
        return vs;
    };
    lay.hub = fresh("v*");
    lay.a_path = path("vA", 0, n);
    lay.b_path = path("vB", 0, L);
    lay.c_path = path("vC", 0, L);
    auto ua = path("uA", -L, L);
    auto wa = path("wA", -L, L);
    auto ub = path("uB", -L, L);
    auto uc = path("uC", -L, L);
    lay.graph.add_edge(lay.hub, lay.a_path[0]);
    lay.graph.add_edge(lay.hub, lay.b_path[0]);
    lay.graph.add_edge(lay.hub, lay.c_path[0]);
    auto at = [&](const std::vector<Vertex>& p, int i) { return p[i + L]; };
    lay.graph.add_edge(at(ua, -1), lay.a_path[0]);
    lay.graph.add_edge(lay.a_path[0], at(wa, 1));
    lay.graph.add_edge(at(ub, -1), lay.b_path[0]);
    lay.graph.add_edge(at(uc, -1), lay.c_path[0]);

    lay.aux.resize(4);
    const int np = lay.n_plus;
    for (int i = 1; i <= L; ++i) {
        int ph = phase_of(i, np);
        lay.aux[0].push_back({at(ub, -i), ph == 2 ? lay.b_path[L - i] : at(ub, L - i)});
        lay.aux[1].push_back({at(uc, -i), ph == 0 ? lay.c_path[L - i] : at(uc, L - i)});
        lay.aux[2].push_back({at(ua, -i), ph == 1 ? at(wa, L - i) : at(ua, L - i)});
        if (ph != 1) lay.aux[3].push_back({at(wa, -i), at(wa, L - i)});
    }
    return lay;
}

std::vector<Vertex> tree_path(const Graph& g, Vertex from, Vertex to) {
    std::vector<Vertex> parent(g.size(), -1);
    std::queue<Vertex> q;
    parent[from] = from;
    q.push(from);
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        if (v == to) break;
        for (Vertex w : g.neighbors(v))
            if (parent[w] < 0) {
                parent[w] = v;
                q.push(w);
            }
    }
    std::vector<Vertex> path{to};
    while (path.back() != from) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

// Positions over turns 0..L of each token, indexed by its start position 1..n.
std::vector<std::vector<Vertex>> primary_motion(const Layout& lay, std::span<const int> flips,
                                                std::vector<int>& arrangement) {
    const int n = lay.n, np = lay.n_plus, L = lay.horizon;
    std::vector<std::vector<Vertex>> pos(n + 1, std::vector<Vertex>(L + 1));
    for (int j = 1; j <= n; ++j) std::fill(pos[j].begin(), pos[j].end(), lay.a_path[j]);
    arrangement.assign(n + 1, 0);
    for (int j = 1; j <= n; ++j) arrangement[j] = j;
    auto walk = [&](int token, int first, const std::vector<Vertex>& path) {
        for (std::size_t s = 0; s < path.size(); ++s)
            std::fill(pos[token].begin() + first + s, pos[token].end(), path[s]);
    };
    const auto& A = lay.a_path;
    const auto& B = lay.b_path;
    const auto& C = lay.c_path;

    for (std::size_t round = 0; round < flips.size(); ++round) {
        const int r = flips[round];
        if (r < 1 || r > n) throw PreconditionError("flip length out of range");
        const int t0 = 3 * np * static_cast<int>(round);
        const int park = t0 + np - 1;
        const int pop_first = std::max(t0 + 2 * np - 2, park + r + 2);
        for (int j = 1; j <= r; ++j) {
            const int token = arrangement[j];
            // Push: out of the first path through the hub, the last token stops on it.
            std::vector<Vertex> push;
            for (int i = j; i >= 0; --i) push.push_back(A[i]);
            push.push_back(lay.hub);
            for (int i = 0; i < r - j; ++i) push.push_back(B[i]);
            walk(token, t0 + 1, std::vector<Vertex>(push.begin() + 1, push.end()));
            // Reverse: from the parking spot into the third path.
            std::vector<Vertex> back;
            for (int i = r - j - 1; i >= 0; --i) back.push_back(B[i]);
            back.push_back(lay.hub);
            for (int i = 0; i <= j; ++i) back.push_back(C[i]);
            walk(token, park + 1, back);
            // Pop: back onto the first path in reversed order.
            std::vector<Vertex> pop;
            for (int i = j - 1; i >= 0; --i) pop.push_back(C[i]);
            pop.push_back(lay.hub);
            for (int i = 0; i <= r - j + 1; ++i) pop.push_back(A[i]);
            walk(token, pop_first, pop);
        }
        std::reverse(arrangement.begin() + 1, arrangement.begin() + 1 + r);
    }
    return pos;
}

std::vector<Vertex> march(const Layout& lay, const Trip& trip) {
    auto path = tree_path(lay.graph, trip.start, trip.target);
    if (static_cast<int>(path.size()) != lay.horizon + 1)
        throw std::logic_error("auxiliary agent not at distance L from its target");
    return path;
}

Schedule assemble(int horizon, const std::vector<std::vector<Vertex>>& per_agent) {
    Schedule s;
    for (int t = 1; t <= horizon; ++t) {
        Placement p;
        for (const auto& track : per_agent) p.push_back(track[t]);
        s.turns.push_back(std::move(p));
    }
    return s;
}

Layout layout_from_registry(const Graph& g, const GadgetRegistry& registry, int n, int horizon) {
    Layout lay;
    lay.graph = g;
    lay.n = n;
    lay.n_plus = n + 2;
    lay.horizon = horizon;
    lay.hub = registry.vertex("v*");
    for (int i = 0; i <= n; ++i) lay.a_path.push_back(registry.vertex(indexed("vA", i)));
    for (int i = 0; i <= horizon; ++i) {
        lay.b_path.push_back(registry.vertex(indexed("vB", i)));
        lay.c_path.push_back(registry.vertex(indexed("vC", i)));
    }
    return lay;
}

}  // namespace

void check_pancake(const PancakeInstance& p) {
    if (p.n() < 1) throw PreconditionError("empty permutation");
    if (p.k < 1) throw PreconditionError("k must be at least 1");
    std::vector<bool> seen(p.n() + 1, false);
    for (int v : p.perm) {
        if (v < 1 || v > p.n() || seen[v]) throw PreconditionError("perm is not a permutation of 1..n");
        seen[v] = true;
    }
}

GeneratedInstance build_pancake_instance(const PancakeInstance& p) {
    check_pancake(p);
    Layout lay = make_layout(p.n(), p.k);
    GeneratedInstance out;
    Instance& inst = out.instance;
    std::vector<AgentId> primary;
    for (int i = 1; i <= p.n(); ++i) {
        primary.push_back(inst.agent_count());
        inst.start.push_back(lay.a_path[p.perm[i - 1]]);
        inst.target.push_back(lay.a_path[i]);
    }
    lay.registry.name_agents("a", primary);
    for (std::size_t f = 0; f < lay.aux.size(); ++f) {
        std::vector<AgentId> ids;
        for (const Trip& t : lay.aux[f]) {
            ids.push_back(inst.agent_count());
            inst.start.push_back(t.start);
            inst.target.push_back(t.target);
        }
        lay.registry.name_agents(kAuxNames[f], std::move(ids));
    }
    inst.graph = std::move(lay.graph);
    inst.makespan_limit = lay.horizon;
    out.registry = std::move(lay.registry);
    return out;
}

Schedule pancake_forward_schedule(const Instance& inst, const GadgetRegistry& registry,
                                  std::span<const int> flips) {
    const auto& primary = registry.agents("a");
    const int n = static_cast<int>(primary.size());
    if (!inst.makespan_limit) throw PreconditionError("instance has no makespan limit");
    const int horizon = *inst.makespan_limit;
    if (horizon != 3 * (n + 2) * static_cast<int>(flips.size()))
        throw PreconditionError("flip sequence length must equal k");
    Layout lay = layout_from_registry(inst.graph, registry, n, horizon);

    std::vector<int> arrangement;
    auto tokens = primary_motion(lay, flips, arrangement);
    std::vector<std::vector<Vertex>> tracks(inst.agent_count());
    for (int i = 0; i < n; ++i) {
        AgentId a = primary[i];
        int token = static_cast<int>(
            std::find(lay.a_path.begin(), lay.a_path.end(), inst.start[a]) - lay.a_path.begin());
        tracks[a] = tokens[token];
        if (tracks[a].back() != inst.target[a])
            throw PreconditionError("flip sequence does not sort the permutation");
    }
    for (const char* name : kAuxNames)
        for (AgentId a : registry.agents(name)) tracks[a] = march(lay, {inst.start[a], inst.target[a]});
    return assemble(horizon, tracks);
}

GeneratedColoredInstance build_colored_pancake_instance(const std::string& alpha,
                                                        const std::string& beta, int k) {
    if (alpha.empty() || alpha.size() != beta.size())
        throw PreconditionError("alpha and beta must be non-empty and of equal length");
    if (alpha.find_first_not_of("01") != std::string::npos ||
        beta.find_first_not_of("01") != std::string::npos)
        throw PreconditionError("alpha and beta must be binary strings");
    if (k < 1) throw PreconditionError("k must be at least 1");
    if (std::count(alpha.begin(), alpha.end(), '0') != std::count(beta.begin(), beta.end(), '0'))
        throw PreconditionError("alpha and beta must have the same symbol counts");
    const int n = static_cast<int>(alpha.size());
    Layout lay = make_layout(n, k);
    GeneratedColoredInstance out;
    ColoredInstance& inst = out.instance;
    for (char symbol : {'0', '1'}) {
        AgentGroup g;
        for (int j = 1; j <= n; ++j) {
            if (alpha[j - 1] == symbol) g.starts.push_back(lay.a_path[j]);
            if (beta[j - 1] == symbol) g.targets.push_back(lay.a_path[j]);
        }
        inst.groups.push_back(std::move(g));
    }
    for (const auto& family : lay.aux) {
        AgentGroup g;
        for (const Trip& t : family) {
            g.starts.push_back(t.start);
            g.targets.push_back(t.target);
        }
        inst.groups.push_back(std::move(g));
    }
    AgentId next = 0;
    for (std::size_t g = 0; g < inst.groups.size(); ++g) {
        std::vector<AgentId> ids;
        for (std::size_t i = 0; i < inst.groups[g].starts.size(); ++i) ids.push_back(next++);
        lay.registry.name_agents(indexed("group", static_cast<long>(g) + 1), std::move(ids));
    }
    inst.graph = std::move(lay.graph);
    inst.makespan_limit = lay.horizon;
    out.registry = std::move(lay.registry);
    return out;
}

Schedule colored_pancake_forward_schedule(const ColoredInstance& inst, const GadgetRegistry& registry,
                                          const std::string& alpha, const std::string& beta,
                                          std::span<const int> flips) {
    const int n = static_cast<int>(alpha.size());
    if (!inst.makespan_limit || inst.groups.size() != 6)
        throw PreconditionError("not a colored pancake instance");
    const int horizon = *inst.makespan_limit;
    if (horizon != 3 * (n + 2) * static_cast<int>(flips.size()))
        throw PreconditionError("flip sequence length must equal k");
    Layout lay = layout_from_registry(inst.graph, registry, n, horizon);
    std::vector<int> arrangement;
    auto tokens = primary_motion(lay, flips, arrangement);
    for (int p = 1; p <= n; ++p)
        if (alpha[arrangement[p] - 1] != beta[p - 1])
            throw PreconditionError("flip sequence does not turn alpha into beta");

    std::vector<std::vector<Vertex>> tracks;
    for (char symbol : {'0', '1'})
        for (int j = 1; j <= n; ++j)
            if (alpha[j - 1] == symbol) tracks.push_back(tokens[j]);
    for (std::size_t g = 2; g < inst.groups.size(); ++g)
        for (std::size_t i = 0; i < inst.groups[g].starts.size(); ++i)
            tracks.push_back(march(lay, {inst.groups[g].starts[i], inst.groups[g].targets[i]}));
    return assemble(horizon, tracks);
}

bool has_unique_pairing(const Graph& g, std::span<const Vertex> starts,
                        std::span<const Vertex> targets, int limit) {
    const std::size_t n = starts.size();
    if (targets.size() != n) return false;
    std::vector<int> target_index(g.size(), -1);
    for (std::size_t j = 0; j < n; ++j) target_index[targets[j]] = static_cast<int>(j);
    std::vector<std::vector<int>> allowed(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> dist(g.size(), -1);
        std::queue<Vertex> q;
        dist[starts[i]] = 0;
        q.push(starts[i]);
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            if (target_index[v] >= 0) allowed[i].push_back(target_index[v]);
            if (dist[v] == limit) continue;
            for (Vertex w : g.neighbors(v))
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    q.push(w);
                }
        }
    }
    std::vector<int> owner(n, -1);
    std::function<bool(int, std::vector<char>&)> augment = [&](int i, std::vector<char>& seen) {
        for (int j : allowed[i]) {
            if (seen[j]) continue;
            seen[j] = 1;
            if (owner[j] < 0 || augment(owner[j], seen)) {
                owner[j] = i;
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<char> seen(n, 0);
        if (!augment(static_cast<int>(i), seen)) return false;
    }
    std::vector<int> partner(n);
    for (std::size_t j = 0; j < n; ++j) partner[owner[j]] = static_cast<int>(j);
    // Another perfect pairing exists iff the alternating digraph on targets
    // (j -> j' when owner[j] may also take j') has a cycle.
    std::vector<int> color(n, 0);
    std::function<bool(int)> cyclic = [&](int j) {
        color[j] = 1;
        for (int next : allowed[owner[j]]) {
            if (next == j) continue;
            if (color[next] == 1 || (color[next] == 0 && cyclic(next))) return true;
        }
        color[j] = 2;
        return false;
    };
    for (std::size_t j = 0; j < n; ++j)
        if (color[j] == 0 && cyclic(static_cast<int>(j))) return false;
    return true;
}

}  // namespace dcmapf
