#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace geohom {

// Simple loopless undirected graph with sorted adjacency lists.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    int num_vertices() const { return static_cast<int>(adj_.size()); }
    std::size_t num_edges() const { return m_; }

    // Duplicate edges are ignored; loops are rejected.
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    // Edges as (u, v) with u < v, sorted.
    std::vector<std::pair<int, int>> edges() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<int>> adj_;
    std::size_t m_ = 0;
};

// Vertex i of the result is vertices[i] of g.
Graph induced_subgraph(const Graph& g, std::span<const int> vertices);

std::vector<std::vector<int>> connected_components(const Graph& g);

// Components of g minus the vertices flagged in removed.
std::vector<std::vector<int>> components_without(const Graph& g, const std::vector<char>& removed);

bool is_clique(const Graph& g, std::span<const int> vertices);

// Side (0/1) per vertex, or nothing if g has an odd cycle.
std::optional<std::vector<int>> two_coloring(const Graph& g);

}
