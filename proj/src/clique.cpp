#include "dcmapf/clique.hpp"

#include <algorithm>
#include <numeric>

#include "dcmapf/errors.hpp"
#include "dcmapf/oracle.hpp"

namespace dcmapf {

namespace {

void require_complete(const Graph& g) {
    long n = g.size();
    if (g.edge_count() != n * (n - 1) / 2) throw PreconditionError("graph is not complete");
}

Schedule two_step(Placement middle, const Placement& target) {
    Schedule s;
    s.turns.push_back(std::move(middle));
    s.turns.push_back(target);
    return s;
}

}  // namespace

std::vector<std::pair<AgentId, AgentId>> swapping_pairs(const Instance& inst) {
    std::vector<AgentId> at(inst.graph.size(), -1);
    for (AgentId a = 0; a < inst.agent_count(); ++a) at[inst.start[a]] = a;
    std::vector<std::pair<AgentId, AgentId>> pairs;
    for (AgentId a = 0; a < inst.agent_count(); ++a) {
        AgentId b = at[inst.target[a]];
        if (b > a && inst.target[b] == inst.start[a]) pairs.emplace_back(a, b);
    }
    return pairs;
}

std::optional<Solution> solve_clique(const Instance& inst) {
    inst.check();
    require_complete(inst.graph);
    const int n = inst.graph.size();
    const int agents = inst.agent_count();
    if (inst.start == inst.target) return Solution{};
    if (n < 4) {
        OracleOptions options;
        options.cap = 64;
        return optimal_schedule(inst, options);
    }

    const Placement& s0 = inst.start;
    const Placement& t = inst.target;
    auto pairs = swapping_pairs(inst);
    const int p = static_cast<int>(pairs.size());
    if (p == 0) return Solution{Schedule{{t}}};

    Placement s1 = s0;
    if (p >= 2) {
        // Keep alpha_1..alpha_{p-1}; rotate the beta agents through alpha_p's slot.
        auto [ap, bp] = pairs[p - 1];
        s1[ap] = s0[pairs[0].second];
        for (int i = 0; i + 1 < p; ++i) s1[pairs[i].second] = s0[pairs[i + 1].second];
        s1[bp] = s0[ap];
        return Solution{two_step(std::move(s1), t)};
    }

    auto [a1, b1] = pairs[0];
    if (n > agents) {
        std::vector<bool> used(n, false);
        for (Vertex v : s0) used[v] = true;
        Vertex spare = static_cast<Vertex>(std::find(used.begin(), used.end(), false) - used.begin());
        s1[a1] = spare;
        return Solution{two_step(std::move(s1), t)};
    }

    // |V| = |A|: pick the smallest pair of other agents that are both home or
    // both displaced.
    for (AgentId x = 0; x < agents; ++x) {
        if (x == a1 || x == b1) continue;
        for (AgentId y = x + 1; y < agents; ++y) {
            if (y == a1 || y == b1) continue;
            bool x_home = s0[x] == t[x];
            bool y_home = s0[y] == t[y];
            if (x_home != y_home) continue;
            if (x_home) {
                s1[a1] = s0[x];
                s1[x] = s0[y];
                s1[y] = s0[a1];
                return Solution{two_step(std::move(s1), t)};
            }
            AgentId a0 = x, b0 = y;
            if (t[a0] == s0[b0]) std::swap(a0, b0);
            if (t[a0] == s0[b0]) continue;
            s1[a1] = s0[a0];
            s1[b1] = s0[a1];
            s1[a0] = s0[b1];
            return Solution{two_step(std::move(s1), t)};
        }
    }
    throw PreconditionError("no auxiliary agent pair found");
}

Schedule solve_clique_anonymous(const Graph& g, std::span<const NamedAgent> named,
                                std::span<const Vertex> anon_starts,
                                std::span<const Vertex> anon_targets) {
    require_complete(g);
    if (g.size() < 4) throw PreconditionError("anonymous clique solve needs at least 4 vertices");
    if (anon_starts.size() != anon_targets.size())
        throw PreconditionError("anonymous start/target counts differ");
    Instance inst;
    inst.graph = g;
    for (const auto& a : named) {
        inst.start.push_back(a.start);
        inst.target.push_back(a.target);
    }
    std::vector<int> order(anon_starts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return anon_starts[i] < anon_starts[j]; });
    std::vector<Vertex> targets(anon_targets.begin(), anon_targets.end());
    std::sort(targets.begin(), targets.end());
    std::vector<Vertex> assigned(anon_starts.size());
    for (std::size_t k = 0; k < order.size(); ++k) assigned[order[k]] = targets[k];
    for (std::size_t i = 0; i < anon_starts.size(); ++i) {
        inst.start.push_back(anon_starts[i]);
        inst.target.push_back(assigned[i]);
    }
    return solve_clique(inst)->schedule;
}

}  // namespace dcmapf
