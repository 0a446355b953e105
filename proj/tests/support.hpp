#pragma once

// Independent oracles and random generators for the tests. Nothing here calls
// the solvers under test.

#include "geohom/generators.hpp"
#include "geohom/geometry.hpp"
#include "geohom/instance.hpp"
#include "geohom/target_graph.hpp"
#include "geohom/weighted.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <vector>

namespace support {

using namespace geohom;
using Rng = std::mt19937_64;

inline int pick(Rng& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }
inline bool coin(Rng& rng, int percent) { return pick(rng, 100) < percent; }

inline TargetGraph make_target(int k, std::initializer_list<std::pair<int, int>> edges)
{
    std::vector<std::string> labels;
    for (int i = 1; i <= k; ++i)
        labels.push_back(std::to_string(i));
    TargetGraph h(labels);
    for (auto [a, b] : edges)
        h.add_edge(a - 1, b - 1);
    return h;
}

inline TargetGraph random_target(Rng& rng, int k, int loop_pct = 40, int edge_pct = 50)
{
    std::vector<std::string> labels;
    for (int i = 1; i <= k; ++i)
        labels.push_back(std::to_string(i));
    TargetGraph h(labels);
    for (int a = 0; a < k; ++a) {
        if (coin(rng, loop_pct))
            h.add_edge(a, a);
        for (int b = a + 1; b < k; ++b)
            if (coin(rng, edge_pct))
                h.add_edge(a, b);
    }
    return h;
}

inline Graph random_graph(Rng& rng, int n, int edge_pct)
{
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng, edge_pct))
                g.add_edge(u, v);
    return g;
}

inline std::vector<ColorSet> random_lists(Rng& rng, int n, const TargetGraph& h, int max_size = 32)
{
    std::vector<ColorSet> lists(n);
    for (auto& l : lists) {
        l = 0;
        for (int a = 0; a < h.size(); ++a)
            if (coin(rng, 55))
                l |= color_bit(a);
        while (color_count(l) > max_size)
            l &= l - 1;
        if (! l)
            l = color_bit(pick(rng, h.size()));
    }
    return lists;
}

// Plain index-order backtracking over all maps; visit returns false to stop.
inline void enumerate_homs(const Graph& g, const std::vector<ColorSet>& lists, const TargetGraph& h,
    const std::function<bool(const std::vector<int>&)>& visit)
{
    int n = g.num_vertices();
    std::vector<int> f(n, -1);
    bool stop = false;
    std::function<void(int)> go = [&](int v) {
        if (stop)
            return;
        if (v == n) {
            stop = ! visit(f);
            return;
        }
        for (int a = 0; a < h.size() && ! stop; ++a) {
            if (! ((lists[v] >> a) & 1U))
                continue;
            bool ok = true;
            for (int u : g.neighbors(v))
                if (u < v && ! h.adjacent(f[u], a))
                    ok = false;
            if (! ok)
                continue;
            f[v] = a;
            go(v + 1);
        }
        f[v] = -1;
    };
    go(0);
}

inline bool oracle_lhom(const Graph& g, const std::vector<ColorSet>& lists, const TargetGraph& h)
{
    bool found = false;
    enumerate_homs(g, lists, h, [&](const std::vector<int>&) {
        found = true;
        return false;
    });
    return found;
}

inline bool oracle_lhom(const ListInstance& inst) { return oracle_lhom(inst.graph, inst.lists, inst.h()); }

inline bool is_hom(const ListInstance& inst, const Assignment& f)
{
    if (f.size() != static_cast<std::size_t>(inst.size()))
        return false;
    for (int v = 0; v < inst.size(); ++v)
        if (f[v] < 0 || ! ((inst.lists[v] >> f[v]) & 1U))
            return false;
    for (auto [u, v] : inst.graph.edges())
        if (! inst.h().adjacent(f[u], f[v]))
            return false;
    return true;
}

// Minimum cost over every map V(G) -> V(H) (lists as hard constraints).
inline std::optional<Rational> oracle_min_cost(const Graph& g, const TargetGraph& h, const CostTables& c,
    const std::vector<ColorSet>* lists = nullptr)
{
    std::vector<ColorSet> all(g.num_vertices(), h.all());
    std::optional<Rational> best;
    enumerate_homs(g, lists ? *lists : all, h, [&](const std::vector<int>& f) {
        Rational t = 0;
        for (int v = 0; v < g.num_vertices(); ++v)
            t += c.vcost[v][f[v]];
        if (c.ecost)
            for (auto [u, v] : g.edges()) {
                auto it = c.ecost->find({u, v});
                if (it != c.ecost->end())
                    t += it->second[f[u] * h.size() + f[v]];
            }
        if (! best || t < *best)
            best = t;
        return true;
    });
    return best;
}

inline int brute_vertex_cover(const Graph& g)
{
    int n = g.num_vertices(), best = n;
    for (std::uint32_t s = 0; s < (1U << n); ++s) {
        bool ok = true;
        for (auto [u, v] : g.edges())
            if (! ((s >> u) & 1U) && ! ((s >> v) & 1U))
                ok = false;
        if (ok)
            best = std::min(best, std::popcount(s));
    }
    return best;
}

inline Rational brute_max_cut(const Graph& g, const std::map<std::pair<int, int>, Rational>& w)
{
    int n = g.num_vertices();
    Rational best = 0;
    for (std::uint32_t s = 0; s < (1U << n); ++s) {
        Rational cut = 0;
        for (auto [u, v] : g.edges())
            if (((s >> u) & 1U) != ((s >> v) & 1U)) {
                auto it = w.find({u, v});
                cut += it == w.end() ? Rational(1) : it->second;
            }
        if (cut > best)
            best = cut;
    }
    return best;
}

inline bool brute_sat(const CnfFormula& f)
{
    for (std::uint32_t s = 0; s < (1U << f.num_vars); ++s) {
        bool all = true;
        for (const auto& c : f.clauses) {
            bool sat = false;
            for (int lit : c) {
                bool val = (s >> (std::abs(lit) - 1)) & 1U;
                sat = sat || (lit > 0 ? val : ! val);
            }
            all = all && sat;
        }
        if (all)
            return true;
    }
    return false;
}

inline CnfFormula random_cnf(Rng& rng, int nv, int nc)
{
    CnfFormula f;
    f.num_vars = nv;
    for (int j = 0; j < nc; ++j) {
        std::array<int, 3> c{};
        for (int& l : c)
            l = (pick(rng, nv) + 1) * (coin(rng, 50) ? 1 : -1);
        f.clauses.push_back(c);
    }
    return f;
}

inline GeoObject disk(const Rational& x, const Rational& y, const Rational& r) { return GeoObject{Disk{{x, y}, r}, Point{x, y}}; }

// Anchored disks with radii in [3/4, 1] and centers on a quarter lattice: a
// valid fat, similarly sized scene for R_max = 1.
inline Scene random_disk_scene(Rng& rng, int n, int box_quarters)
{
    Scene s;
    for (int i = 0; i < n; ++i) {
        Rational x(pick(rng, box_quarters), 4), y(pick(rng, box_quarters), 4);
        Rational r(3 + pick(rng, 2), 4);
        if (coin(rng, 20))
            r = 1;
        s.objects.push_back(disk(x, y, r));
    }
    return s;
}

// Radius-3/4 disks on a jittered grid with the given number of rows; a long
// strip is connected in most draws.
inline Scene strip_scene(Rng& rng, int n, int rows)
{
    Scene s;
    for (int i = 0; i < n; ++i) {
        int c = i / rows, r = i % rows;
        Rational x = Rational(6 * c, 5) + Rational(pick(rng, 5), 10);
        Rational y = Rational(6 * r, 5) + Rational(pick(rng, 5), 10);
        s.objects.push_back(disk(x, y, Rational(3, 4)));
    }
    return s;
}

// A list homomorphism to H chosen at random (greedy with restarts).
inline std::vector<int> planted_map(Rng& rng, const Graph& g, const TargetGraph& h, int irreflexive_pct)
{
    int n = g.num_vertices();
    std::vector<int> f(n);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::fill(f.begin(), f.end(), -1);
        bool failed = false;
        for (int v = 0; v < n && ! failed; ++v) {
            ColorSet ok = h.all();
            bool near_irreflexive = false;
            for (int u : g.neighbors(v))
                if (f[u] >= 0) {
                    ok &= h.neighbors(f[u]);
                    near_irreflexive = near_irreflexive || ! h.reflexive(f[u]);
                }
            std::vector<int> refl, irr;
            for_each_color(ok, [&](int a) { (h.reflexive(a) ? refl : irr).push_back(a); });
            if (refl.empty() && irr.empty())
                failed = true;
            else if (! irr.empty() && (refl.empty() || (! near_irreflexive && coin(rng, irreflexive_pct))))
                f[v] = irr[pick(rng, static_cast<int>(irr.size()))];
            else
                f[v] = refl[pick(rng, static_cast<int>(refl.size()))];
        }
        if (! failed)
            return f;
    }
    throw std::runtime_error("planted_map: no map found");
}

}
