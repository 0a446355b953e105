#include "geohom/graph.hpp"

#include "geohom/errors.hpp"

#include <algorithm>
#include <string>

namespace geohom {

Graph::Graph(int n) : adj_(n) {}

void Graph::add_edge(int u, int v)
{
    if (u == v)
        throw PreconditionError("instance graphs are loopless (vertex " + std::to_string(u) + ")");
    if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices())
        throw PreconditionError("edge endpoint out of range");
    auto& au = adj_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v)
        return;
    au.insert(it, v);
    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++m_;
}

bool Graph::has_edge(int u, int v) const
{
    if (adj_[u].size() > adj_[v].size())
        std::swap(u, v);
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const
{
    std::vector<std::pair<int, int>> out;
    out.reserve(m_);
    for (int u = 0; u < num_vertices(); ++u)
        for (int v : adj_[u])
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

Graph induced_subgraph(const Graph& g, std::span<const int> vertices)
{
    std::vector<int> local(g.num_vertices(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        local[vertices[i]] = static_cast<int>(i);
    Graph sub(static_cast<int>(vertices.size()));
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (int w : g.neighbors(vertices[i]))
            if (local[w] > static_cast<int>(i))
                sub.add_edge(static_cast<int>(i), local[w]);
    return sub;
}

std::vector<std::vector<int>> components_without(const Graph& g, const std::vector<char>& removed)
{
    int n = g.num_vertices();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<int>> out;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (seen[s] || (! removed.empty() && removed[s]))
            continue;
        std::vector<int> comp;
        seen[s] = 1;
        stack.push_back(s);
        while (! stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : g.neighbors(v))
                if (! seen[w] && (removed.empty() || ! removed[w])) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::vector<std::vector<int>> connected_components(const Graph& g)
{
    return components_without(g, {});
}

bool is_clique(const Graph& g, std::span<const int> vertices)
{
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (! g.has_edge(vertices[i], vertices[j]))
                return false;
    return true;
}

std::optional<std::vector<int>> two_coloring(const Graph& g)
{
    int n = g.num_vertices();
    std::vector<int> side(n, -1);
    std::vector<int> queue;
    for (int s = 0; s < n; ++s) {
        if (side[s] != -1)
            continue;
        side[s] = 0;
        queue.assign(1, s);
        for (std::size_t h = 0; h < queue.size(); ++h) {
            int v = queue[h];
            for (int w : g.neighbors(v)) {
                if (side[w] == -1) {
                    side[w] = 1 - side[v];
                    queue.push_back(w);
                }
                else if (side[w] == side[v])
                    return std::nullopt;
            }
        }
    }
    return side;
}

}
