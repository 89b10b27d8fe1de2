#include "brute.hpp"

#include <algorithm>
#include <set>

namespace brute {

bool is_vertex_cover(const Graph& g, const std::vector<Vertex>& cover) {
    std::vector<bool> in(g.size(), false);
    for (Vertex v : cover) in[v] = true;
    for (auto [u, v] : g.edges())
        if (!in[u] && !in[v]) return false;
    return true;
}

int vertex_cover_number(const Graph& g) {
    const int n = g.size();
    int best = n;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (size >= best) continue;
        bool ok = true;
        for (auto [u, v] : g.edges())
            if (!(mask >> u & 1u) && !(mask >> v & 1u)) {
                ok = false;
                break;
            }
        if (ok) best = size;
    }
    return best;
}

int distance_to_clique(const Graph& g) {
    const int n = g.size();
    int best = n;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int removed = n - __builtin_popcount(mask);
        if (removed >= best) continue;
        bool clique = true;
        for (int u = 0; u < n && clique; ++u)
            for (int v = u + 1; v < n && clique; ++v)
                if ((mask >> u & 1u) && (mask >> v & 1u) && !g.adjacent(u, v)) clique = false;
        if (clique) best = removed;
    }
    return best;
}

namespace {

void extend(const Graph& g, const Placement& p, Placement& cur, std::vector<Placement>& out) {
    const std::size_t a = cur.size();
    if (a == p.size()) {
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i + 1; j < p.size(); ++j)
                if (cur[i] == p[j] && cur[j] == p[i]) return;
        out.push_back(cur);
        return;
    }
    std::vector<Vertex> options{p[a]};
    for (Vertex w : g.neighbors(p[a])) options.push_back(w);
    for (Vertex w : options) {
        if (std::find(cur.begin(), cur.end(), w) != cur.end()) continue;
        cur.push_back(w);
        extend(g, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Placement> successors(const Graph& g, const Placement& p) {
    std::vector<Placement> out;
    Placement cur;
    extend(g, p, cur, out);
    return out;
}

std::optional<int> optimal_makespan(const Instance& inst, int cap, const std::vector<Vertex>& occupied,
                                    int min_occupancy) {
    auto allowed = [&](const Placement& p) {
        if (occupied.empty() || p == inst.target) return true;
        int count = 0;
        for (Vertex v : p) count += std::count(occupied.begin(), occupied.end(), v) > 0;
        return count >= min_occupancy;
    };
    std::set<Placement> reach{inst.start};
    for (int d = 0; d <= cap; ++d) {
        if (reach.count(inst.target)) return d;
        std::set<Placement> next = reach;
        for (const auto& p : reach)
            for (auto& q : successors(inst.graph, p))
                if (allowed(q)) next.insert(std::move(q));
        if (next.size() == reach.size()) return std::nullopt;
        reach = std::move(next);
    }
    return std::nullopt;
}

bool same_modulator_neighbourhood(const Graph& g, const std::vector<Vertex>& modulator, Vertex u,
                                  Vertex v) {
    for (Vertex m : modulator)
        if (g.adjacent(u, m) != g.adjacent(v, m)) return false;
    return true;
}

}  // namespace brute
