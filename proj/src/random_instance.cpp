#include "dcmapf/random_instance.hpp"

#include <algorithm>
#include <numeric>

#include "dcmapf/errors.hpp"

namespace dcmapf {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw PreconditionError("empty range");
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % bound;
    for (;;) {
        std::uint64_t x = rng();
        if (x < limit) return x % bound;
    }
}

namespace {

std::vector<Vertex> shuffled(int n, std::mt19937_64& rng) {
    std::vector<Vertex> v(n);
    std::iota(v.begin(), v.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(v[i], v[uniform_below(rng, i + 1)]);
    return v;
}

}  // namespace

Instance random_instance(const RandomSpec& spec) {
    if (spec.vertices < 1 || spec.dc < 0 || spec.dc > spec.vertices)
        throw PreconditionError("need 0 <= dc <= vertices and at least one vertex");
    if (spec.agents < 1 || spec.agents > spec.vertices)
        throw PreconditionError("need 1 <= agents <= vertices");
    std::mt19937_64 rng(spec.seed);
    const int n = spec.vertices;
    const int clique = n - spec.dc;
    auto label = shuffled(n, rng);
    Instance inst;
    inst.graph = Graph(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            bool edge = v < clique || uniform_below(rng, 2) == 1;
            if (edge) inst.graph.add_edge(label[u], label[v]);
        }
    auto starts = shuffled(n, rng);
    auto targets = shuffled(n, rng);
    inst.start.assign(starts.begin(), starts.begin() + spec.agents);
    inst.target.assign(targets.begin(), targets.begin() + spec.agents);
    return inst;
}

namespace {

// Random legal single-agent steps from `from`; the list of placements visited.
std::vector<Placement> excursion(const Graph& g, const Placement& from, int length,
                                 std::mt19937_64& rng) {
    std::vector<Placement> path{from};
    std::vector<bool> occupied(g.size(), false);
    for (Vertex v : from) occupied[v] = true;
    Placement cur = from;
    for (int step = 0; step < length; ++step) {
        std::vector<std::pair<AgentId, Vertex>> moves;
        for (AgentId a = 0; a < static_cast<AgentId>(cur.size()); ++a)
            for (Vertex w : g.neighbors(cur[a]))
                if (!occupied[w]) moves.emplace_back(a, w);
        if (moves.empty()) break;
        auto [a, w] = moves[uniform_below(rng, moves.size())];
        occupied[cur[a]] = false;
        occupied[w] = true;
        cur[a] = w;
        path.push_back(cur);
    }
    return path;
}

}  // namespace

Schedule pad_schedule(const Graph& g, const Placement& start, const Schedule& s, int detours,
                      int detour_length, std::mt19937_64& rng) {
    std::vector<Placement> all{start};
    all.insert(all.end(), s.turns.begin(), s.turns.end());
    for (int d = 0; d < detours; ++d) {
        std::size_t at = uniform_below(rng, all.size());
        auto out = excursion(g, all[at], detour_length, rng);
        std::vector<Placement> loop(out.begin() + 1, out.end());
        for (auto it = out.rbegin() + 1; it != out.rend(); ++it) loop.push_back(*it);
        all.insert(all.begin() + at + 1, loop.begin(), loop.end());
    }
    Schedule padded;
    padded.turns.assign(all.begin() + 1, all.end());
    return padded;
}

}  // namespace dcmapf
