#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace dcmapf {

using Vertex = int;

// Simple undirected graph on vertices 0..size()-1 with sorted adjacency lists.
class Graph {
public:
    Graph() = default;
    explicit Graph(int vertex_count);

    int size() const { return static_cast<int>(adj_.size()); }
    int edge_count() const { return edge_count_; }

    void add_edge(Vertex u, Vertex v);
    bool adjacent(Vertex u, Vertex v) const;
    bool contains(Vertex v) const { return v >= 0 && v < size(); }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

    // Edges as (u, v) with u < v, sorted.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    // Subgraph induced by `vertices`; vertex i of the result is vertices[i].
    Graph induced(std::span<const Vertex> vertices) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<Vertex>> adj_;
    int edge_count_ = 0;
};

Graph complement(const Graph& g);

bool is_clique(const Graph& g, std::span<const Vertex> vertices);

// Smallest vertex cover of size <= budget, or nullopt. Among covers of minimum
// size the lexicographically smallest sorted set is returned.
std::optional<std::vector<Vertex>> min_vertex_cover(const Graph& g, int budget);

// Partition into a modulator and a clique with the modulator as small as possible.
struct CliqueSplit {
    std::vector<Vertex> modulator;  // sorted
    std::vector<Vertex> clique;     // sorted
    std::vector<bool> in_modulator;
    int distance() const { return static_cast<int>(modulator.size()); }
};

CliqueSplit clique_split(const Graph& g);

}  // namespace dcmapf
