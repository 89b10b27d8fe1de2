#include "dcmapf/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>

#include "dcmapf/errors.hpp"

namespace dcmapf {

Graph::Graph(int vertex_count) {
    if (vertex_count < 0) throw PreconditionError("negative vertex count");
    adj_.resize(vertex_count);
}

void Graph::add_edge(Vertex u, Vertex v) {
    if (!contains(u) || !contains(v))
        throw PreconditionError("edge endpoint out of range: " + std::to_string(u) + " " +
                                std::to_string(v));
    if (u == v) throw PreconditionError("self-loop at " + std::to_string(u));
    auto& au = adj_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v)
        throw PreconditionError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    au.insert(it, v);
    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++edge_count_;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    if (!contains(u) || !contains(v)) return false;
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    Vertex other = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), other);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < size(); ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph Graph::induced(std::span<const Vertex> vertices) const {
    std::vector<int> local(size(), -1);
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i) {
        if (!contains(vertices[i]) || local[vertices[i]] != -1)
            throw PreconditionError("invalid vertex list for induced subgraph");
        local[vertices[i]] = i;
    }
    Graph h(static_cast<int>(vertices.size()));
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
        for (Vertex w : adj_[vertices[i]])
            if (local[w] > i) h.add_edge(i, local[w]);
    return h;
}

Graph complement(const Graph& g) {
    Graph h(g.size());
    for (Vertex u = 0; u < g.size(); ++u) {
        const auto& nu = g.neighbors(u);
        auto it = nu.begin();
        for (Vertex v = u + 1; v < g.size(); ++v) {
            while (it != nu.end() && *it < v) ++it;
            if (it == nu.end() || *it != v) h.add_edge(u, v);
        }
    }
    return h;
}

bool is_clique(const Graph& g, std::span<const Vertex> vertices) {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (!g.adjacent(vertices[i], vertices[j])) return false;
    return true;
}

namespace {

enum : std::int8_t { kOpen = 0, kIn = 1, kOut = 2 };

// Branching search for a vertex cover under partial in/out decisions.
class CoverSearch {
public:
    explicit CoverSearch(const Graph& g) : g_(g) {}

    bool feasible(const std::vector<std::int8_t>& fixed, int budget) {
        State s;
        s.mark.assign(g_.size(), kOpen);
        s.open_degree.assign(g_.size(), 0);
        for (Vertex v = 0; v < g_.size(); ++v) s.open_degree[v] = g_.degree(v);
        s.budget = budget;
        for (Vertex v = 0; v < g_.size(); ++v) {
            if (fixed[v] == kIn && s.mark[v] == kOpen) take(s, v);
            if (fixed[v] == kOut) {
                if (s.mark[v] == kIn) return false;
                if (s.mark[v] == kOpen && !drop(s, v)) return false;
            }
        }
        return solve(std::move(s));
    }

private:
    struct State {
        std::vector<std::int8_t> mark;
        std::vector<int> open_degree;
        int budget = 0;
        std::deque<Vertex> queue;
    };

    void take(State& s, Vertex v) {
        s.mark[v] = kIn;
        --s.budget;
        for (Vertex u : g_.neighbors(v)) {
            --s.open_degree[u];
            if (s.mark[u] == kOpen) s.queue.push_back(u);
        }
    }

    bool drop(State& s, Vertex v) {
        s.mark[v] = kOut;
        for (Vertex u : g_.neighbors(v)) {
            --s.open_degree[u];
            if (s.mark[u] == kOut) return false;
        }
        for (Vertex u : g_.neighbors(v))
            if (s.mark[u] == kOpen) take(s, u);
        return true;
    }

    bool propagate(State& s) {
        while (!s.queue.empty() && s.budget >= 0) {
            Vertex v = s.queue.front();
            s.queue.pop_front();
            if (s.mark[v] != kOpen) continue;
            if (s.open_degree[v] == 0) {
                s.mark[v] = kOut;
                for (Vertex u : g_.neighbors(v)) --s.open_degree[u];
            } else if (s.open_degree[v] == 1) {
                for (Vertex u : g_.neighbors(v))
                    if (s.mark[u] == kOpen) {
                        take(s, u);
                        break;
                    }
                s.queue.push_back(v);
            }
        }
        return s.budget >= 0;
    }

    bool solve(State s) {
        for (Vertex v = 0; v < g_.size(); ++v)
            if (s.mark[v] == kOpen) s.queue.push_back(v);
        if (!propagate(s)) return false;
        Vertex pick = -1;
        long open_edges = 0;
        for (Vertex v = 0; v < g_.size(); ++v) {
            if (s.mark[v] != kOpen) continue;
            open_edges += s.open_degree[v];
            if (s.open_degree[v] > 0 && (pick < 0 || s.open_degree[v] > s.open_degree[pick]))
                pick = v;
        }
        if (pick < 0) return true;
        open_edges /= 2;
        if (open_edges > static_cast<long>(s.budget) * s.open_degree[pick]) return false;
        State with = s;
        take(with, pick);
        if (solve(std::move(with))) return true;
        if (!drop(s, pick)) return false;
        return solve(std::move(s));
    }

    const Graph& g_;
};

}  // namespace

std::optional<std::vector<Vertex>> min_vertex_cover(const Graph& g, int budget) {
    CoverSearch search(g);
    std::vector<std::int8_t> fixed(g.size(), kOpen);
    int size = -1;
    for (int k = 0; k <= budget; ++k)
        if (search.feasible(fixed, k)) {
            size = k;
            break;
        }
    if (size < 0) return std::nullopt;

    // Including the smallest possible vertex at each step gives the
    // lexicographically smallest cover among those of minimum size.
    std::vector<Vertex> cover;
    for (Vertex v = 0; v < g.size() && static_cast<int>(cover.size()) < size; ++v) {
        if (g.degree(v) == 0) {
            fixed[v] = kOut;
            continue;
        }
        fixed[v] = kIn;
        if (search.feasible(fixed, size)) {
            cover.push_back(v);
        } else {
            fixed[v] = kOut;
        }
    }
    return cover;
}

CliqueSplit clique_split(const Graph& g) {
    auto cover = min_vertex_cover(complement(g), g.size());
    CliqueSplit split;
    split.modulator = std::move(*cover);
    split.in_modulator.assign(g.size(), false);
    for (Vertex v : split.modulator) split.in_modulator[v] = true;
    for (Vertex v = 0; v < g.size(); ++v)
        if (!split.in_modulator[v]) split.clique.push_back(v);
    return split;
}

}  // namespace dcmapf
