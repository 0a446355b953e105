#include "geohom/separators.hpp"

#include "geohom/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <tuple>

namespace geohom {

double CliqueSeparator::weight() const
{
    double w = 0;
    for (const auto& c : cliques)
        w += std::log2(static_cast<double>(c.size()) + 1.0);
    return w;
}

std::vector<int> CliqueSeparator::vertices() const
{
    std::vector<int> out;
    for (const auto& c : cliques)
        out.insert(out.end(), c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool is_balanced(const Graph& g, std::span<const int> s, const Rational& delta)
{
    std::vector<char> removed(g.num_vertices(), 0);
    for (int v : s)
        removed[v] = 1;
    Rational cap = delta * g.num_vertices();
    for (const auto& comp : components_without(g, removed))
        if (Rational(static_cast<long>(comp.size())) > cap)
            return false;
    return true;
}

bool verify_clique_separator(const Graph& g, const CliqueSeparator& sep)
{
    std::vector<char> used(g.num_vertices(), 0);
    for (const auto& c : sep.cliques) {
        for (int v : c) {
            if (v < 0 || v >= g.num_vertices() || used[v])
                return false;
            used[v] = 1;
        }
        if (! is_clique(g, c))
            return false;
    }
    return is_balanced(g, sep.vertices(), sep.delta);
}

std::size_t separator_budget(std::size_t m, const Rational& factor)
{
    Rational target = factor * factor * static_cast<long>(m);
    auto k = static_cast<std::size_t>(std::max(0.0, std::floor(to_double(factor) * std::sqrt(static_cast<double>(m)))));
    while (k > 0 && Rational(static_cast<long>((k - 1) * (k - 1))) >= target)
        --k;
    while (Rational(static_cast<long>(k * k)) < target)
        ++k;
    return k;
}

namespace {

std::optional<std::vector<int>> exhaustive_separator(const Graph& g, const Rational& delta, std::size_t budget)
{
    int n = g.num_vertices();
    std::size_t top = std::min<std::size_t>(budget, static_cast<std::size_t>(n));
    for (std::size_t size = 1; size <= top; ++size) {
        std::vector<int> pick(size);
        std::iota(pick.begin(), pick.end(), 0);
        for (;;) {
            if (is_balanced(g, pick, delta))
                return pick;
            // Next combination in lexicographic order.
            int i = static_cast<int>(size) - 1;
            while (i >= 0 && pick[i] == n - static_cast<int>(size) + i)
                --i;
            if (i < 0)
                break;
            ++pick[i];
            for (std::size_t j = i + 1; j < size; ++j)
                pick[j] = pick[j - 1] + 1;
        }
    }
    return std::nullopt;
}

std::vector<int> bfs_levels(const Graph& g, int root)
{
    std::vector<int> level(g.num_vertices(), -1);
    std::vector<int> queue{root};
    level[root] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h)
        for (int w : g.neighbors(queue[h]))
            if (level[w] < 0) {
                level[w] = level[queue[h]] + 1;
                queue.push_back(w);
            }
    return level;
}

int farthest(const std::vector<int>& level)
{
    int best = 0;
    for (std::size_t v = 0; v < level.size(); ++v)
        if (level[v] > level[best])
            best = static_cast<int>(v);
    return best;
}

std::vector<int> shrink(const Graph& g, std::vector<int> s, const Rational& delta)
{
    for (std::size_t i = 0; i < s.size();) {
        std::vector<int> t = s;
        t.erase(t.begin() + static_cast<long>(i));
        if (is_balanced(g, t, delta))
            s = std::move(t);
        else
            ++i;
    }
    return s;
}

}

std::optional<std::vector<int>> balanced_vertex_separator(const Graph& g, const Rational& delta, std::size_t size_budget,
    std::uint64_t seed)
{
    int n = g.num_vertices();
    if (is_balanced(g, {}, delta))
        return std::vector<int>{};
    if (n <= 18)
        return exhaustive_separator(g, delta, size_budget);

    // Roots: the start of the largest component, a max-degree vertex, a
    // double-sweep peripheral vertex, and a few seeded random picks.
    auto comps = connected_components(g);
    const auto& big = *std::max_element(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::vector<int> roots{big.front()};
    roots.push_back(*std::max_element(big.begin(), big.end(), [&](int a, int b) { return g.degree(a) < g.degree(b); }));
    int p = farthest(bfs_levels(g, big.front()));
    roots.push_back(p);
    roots.push_back(farthest(bfs_levels(g, p)));
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 4; ++i)
        roots.push_back(big[std::uniform_int_distribution<std::size_t>(0, big.size() - 1)(rng)]);

    std::optional<std::vector<int>> best;
    for (int root : roots) {
        auto level = bfs_levels(g, root);
        int depth = *std::max_element(level.begin(), level.end());
        std::vector<std::vector<int>> layers(depth + 1);
        for (int v = 0; v < n; ++v)
            if (level[v] >= 0)
                layers[level[v]].push_back(v);
        for (int d = 1; d < depth; ++d) {
            if (best && layers[d].size() >= best->size())
                continue;
            if (is_balanced(g, layers[d], delta))
                best = layers[d];
        }
    }
    if (! best)
        return std::nullopt;
    auto s = shrink(g, *best, delta);
    if (s.size() > size_budget)
        return std::nullopt;
    return s;
}

std::vector<std::vector<int>> greedy_clique_cover(const Graph& g, std::span<const int> s)
{
    std::vector<int> rest(s.begin(), s.end());
    std::sort(rest.begin(), rest.end());
    std::vector<std::vector<int>> out;
    while (! rest.empty()) {
        auto inner_degree = [&](int v) {
            int d = 0;
            for (int u : rest)
                d += g.has_edge(u, v) ? 1 : 0;
            return d;
        };
        int seed = rest.front(), seed_deg = inner_degree(seed);
        for (int v : rest)
            if (int d = inner_degree(v); d > seed_deg) {
                seed = v;
                seed_deg = d;
            }
        std::vector<int> clique{seed};
        for (int v : rest)
            if (v != seed && std::all_of(clique.begin(), clique.end(), [&](int u) { return g.has_edge(u, v); }))
                clique.push_back(v);
        std::sort(clique.begin(), clique.end());
        std::erase_if(rest, [&](int v) { return std::binary_search(clique.begin(), clique.end(), v); });
        out.push_back(std::move(clique));
    }
    return out;
}

namespace {

struct IntExtent {
    // Integer lines k with lo <= k <= hi meet the hull.
    std::int64_t xlo, xhi, ylo, yhi;
};

IntExtent int_extent(const GeoObject& o)
{
    Extent e = extent(o);
    return {ceil_to_int(e.xmin), floor_to_int(e.xmax), ceil_to_int(e.ymin), floor_to_int(e.ymax)};
}

bool meets(const IntExtent& e, Axis axis, std::int64_t k)
{
    return axis == Axis::vertical ? (e.xlo <= k && k <= e.xhi) : (e.ylo <= k && k <= e.yhi);
}

// Objects entirely below the line (left side) for the given axis.
bool before(const IntExtent& e, Axis axis, std::int64_t k)
{
    return axis == Axis::vertical ? e.xhi < k : e.yhi < k;
}

Point representative(const GeoObject& o)
{
    if (o.anchor)
        return *o.anchor;
    if (const auto* d = std::get_if<Disk>(&o.shape))
        return d->center;
    return shape_vertices(o).front();
}

// Smallest e with diam^2 <= 4^e.
int scale_exponent(const GeoObject& o)
{
    Rational d2 = diameter_squared(o);
    int e = 0;
    Rational p = 1;
    while (p < d2) {
        p *= 4;
        ++e;
    }
    while (e > -60 && p / 4 >= d2) {
        p /= 4;
        --e;
    }
    return e;
}

Rational power_of_two(int e)
{
    Rational r = 1;
    for (int i = 0; i < std::abs(e); ++i)
        r *= 2;
    return e >= 0 ? r : Rational(1) / r;
}

}

std::optional<CliqueSeparator> clique_based_separator(const Scene& s, const Graph& g, const Rational& delta)
{
    int n = g.num_vertices();
    if (n != static_cast<int>(s.size()))
        throw PreconditionError("clique_based_separator: scene and graph sizes differ");
    if (is_balanced(g, {}, delta))
        return CliqueSeparator{{}, delta};

    bool unit_cells = std::all_of(s.objects.begin(), s.objects.end(), [](const GeoObject& o) { return contains_anchor_disk(o); });
    std::vector<IntExtent> ext;
    std::vector<std::tuple<int, std::int64_t, std::int64_t>> cell;
    for (const auto& o : s.objects) {
        ext.push_back(int_extent(o));
        Point r = representative(o);
        if (unit_cells)
            cell.emplace_back(0, floor_to_int(r.x), floor_to_int(r.y));
        else {
            int e = scale_exponent(o);
            Rational side = power_of_two(e);
            cell.emplace_back(e, floor_to_int(r.x / side), floor_to_int(r.y / side));
        }
    }

    std::optional<CliqueSeparator> best;
    Rational cap = delta * n;
    for (Axis axis : {Axis::vertical, Axis::horizontal}) {
        std::int64_t lo = 0, hi = 0;
        for (int i = 0; i < n; ++i) {
            std::int64_t a = axis == Axis::vertical ? ext[i].xlo : ext[i].ylo;
            std::int64_t b = axis == Axis::vertical ? ext[i].xhi : ext[i].yhi;
            if (i == 0 || a < lo)
                lo = a;
            if (i == 0 || b > hi)
                hi = b;
        }
        for (std::int64_t k = lo; k <= hi; ++k) {
            long left = 0, right = 0;
            std::vector<int> crossing;
            for (int i = 0; i < n; ++i) {
                if (meets(ext[i], axis, k))
                    crossing.push_back(i);
                else if (before(ext[i], axis, k))
                    ++left;
                else
                    ++right;
            }
            if (Rational(left) > cap || Rational(right) > cap)
                continue;
            std::map<std::tuple<int, std::int64_t, std::int64_t>, std::vector<int>> groups;
            for (int v : crossing)
                groups[cell[v]].push_back(v);
            CliqueSeparator sep{{}, delta};
            for (auto& [key, members] : groups)
                for (auto& c : greedy_clique_cover(g, members))
                    sep.cliques.push_back(std::move(c));
            if (! best || sep.weight() < best->weight())
                best = std::move(sep);
        }
    }
    if (best && verify_clique_separator(g, *best))
        return best;

    auto fallback = balanced_vertex_separator(g, delta, static_cast<std::size_t>(n));
    if (! fallback)
        return std::nullopt;
    CliqueSeparator sep{greedy_clique_cover(g, *fallback), delta};
    if (! verify_clique_separator(g, sep))
        return std::nullopt;
    return sep;
}

bool hull_crosses(const GeoObject& o, Axis axis, std::int64_t line)
{
    Extent e = extent(o);
    Rational k(line);
    return axis == Axis::vertical ? (e.xmin <= k && k <= e.xmax) : (e.ymin <= k && k <= e.ymax);
}

bool small_area(std::int64_t area, std::size_t n, const Rational& c_area)
{
    Rational a(area);
    Rational nn(static_cast<long>(n));
    return a * a * a <= c_area * c_area * c_area * nn * nn;
}

namespace {

LineSeparation choose_line(const Scene& s, const Rational& c_area)
{
    LineSeparation out;
    GridRect bb = bounding_box(s);
    if (small_area(bb.area(), s.size(), c_area)) {
        out.small_area = true;
        return out;
    }
    std::vector<IntExtent> ext;
    for (const auto& o : s.objects)
        ext.push_back(int_extent(o));

    std::optional<std::tuple<std::size_t, int, std::int64_t>> best;
    for (Axis axis : {Axis::vertical, Axis::horizontal}) {
        std::int64_t w = axis == Axis::vertical ? bb.columns() : bb.rows();
        std::int64_t c0 = axis == Axis::vertical ? bb.col_min : bb.row_min;
        for (std::int64_t j = (w + 2) / 3; j <= (2 * w) / 3; ++j) {
            std::int64_t k = c0 + j;
            std::size_t count = 0;
            for (const auto& e : ext)
                count += meets(e, axis, k) ? 1 : 0;
            auto key = std::make_tuple(count, axis == Axis::vertical ? 0 : 1, k);
            if (! best || key < *best)
                best = key;
        }
    }
    if (! best) {
        out.small_area = true;
        return out;
    }
    out.axis = std::get<1>(*best) == 0 ? Axis::vertical : Axis::horizontal;
    out.line = std::get<2>(*best);
    for (std::size_t i = 0; i < ext.size(); ++i) {
        int v = static_cast<int>(i);
        if (meets(ext[i], out.axis, out.line))
            out.crossing.push_back(v);
        else if (before(ext[i], out.axis, out.line))
            out.left.push_back(v);
        else
            out.right.push_back(v);
    }
    return out;
}

}

LineSeparation line_separator(const Scene& s, const Rational& c_area, const Rational& r_max)
{
    if (s.size() == 0)
        throw PreconditionError("line_separator: empty scene");
    if (c_area < 1)
        throw PreconditionError("line_separator: c_area must be at least 1");
    if (! validate_fat_similarly_sized(s, r_max).ok())
        throw PreconditionError("line_separator: scene is not fat and similarly sized");
    if (connected_components(intersection_graph(s)).size() != 1)
        throw PreconditionError("line_separator: intersection graph is disconnected");
    return choose_line(s, c_area);
}

LineSeparation line_separator_unchecked(const Scene& s, const Rational& c_area)
{
    return choose_line(s, c_area);
}

bool verify_line_separation(const Scene& s, const LineSeparation& sep)
{
    if (sep.small_area)
        return true;
    std::vector<int> seen(s.size(), 0);
    for (const auto* part : {&sep.crossing, &sep.left, &sep.right})
        for (int v : *part) {
            if (v < 0 || v >= static_cast<int>(s.size()))
                return false;
            ++seen[v];
        }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
        return false;
    Rational k(sep.line);
    for (int v : sep.crossing)
        if (! hull_crosses(s.objects[v], sep.axis, sep.line))
            return false;
    for (int v : sep.left) {
        Extent e = extent(s.objects[v]);
        if ((sep.axis == Axis::vertical ? e.xmax : e.ymax) >= k)
            return false;
    }
    for (int v : sep.right) {
        Extent e = extent(s.objects[v]);
        if ((sep.axis == Axis::vertical ? e.xmin : e.ymin) <= k)
            return false;
    }
    std::int64_t whole = area(s);
    for (const auto* part : {&sep.left, &sep.right})
        if (! part->empty() && 4 * area(s, *part) > 3 * whole)
            return false;
    return true;
}

std::string format_separator(const CliqueSeparator& sep)
{
    std::string out;
    for (const auto& c : sep.cliques) {
        out += "sep clique";
        for (int v : c)
            out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

}
