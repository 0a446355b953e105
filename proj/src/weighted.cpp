#include "geohom/weighted.hpp"

#include "geohom/errors.hpp"
#include "search_state.hpp"

#include <algorithm>
#include <cmath>

namespace geohom {

using detail::SearchState;

Rational CostTables::edge_cost(int u, int v, int a, int b) const
{
    if (! ecost)
        return 0;
    if (u > v) {
        std::swap(u, v);
        std::swap(a, b);
    }
    auto it = ecost->find({u, v});
    if (it == ecost->end())
        return 0;
    int h = static_cast<int>(std::lround(std::sqrt(static_cast<double>(it->second.size()))));
    return it->second[a * h + b];
}

void CostTables::set_edge_cost(int u, int v, int a, int b, const Rational& q, int h)
{
    if (q < 0)
        throw PreconditionError("costs must be nonnegative");
    if (! ecost)
        ecost.emplace();
    if (u > v) {
        std::swap(u, v);
        std::swap(a, b);
    }
    auto& m = (*ecost)[{u, v}];
    if (m.empty())
        m.assign(static_cast<std::size_t>(h * h), Rational(0));
    m[a * h + b] = q;
    m[b * h + a] = q;
}

CostTables zero_costs(int n, int h)
{
    CostTables c;
    c.vcost.assign(n, std::vector<Rational>(h, Rational(0)));
    return c;
}

Rational total_cost(const Graph& g, const CostTables& costs, const Assignment& f)
{
    Rational t = 0;
    for (int v = 0; v < g.num_vertices(); ++v)
        t += costs.vcost[v][f[v]];
    if (costs.ecost)
        for (auto [u, v] : g.edges())
            t += costs.edge_cost(u, v, f[u], f[v]);
    return t;
}

std::pair<Graph, CostTables> lists_to_costs(const ListInstance& inst)
{
    int h = inst.h().size();
    CostTables c = zero_costs(inst.size(), h);
    for (int v = 0; v < inst.size(); ++v)
        for (int a = 0; a < h; ++a)
            c.vcost[v][a] = ((inst.lists[v] >> a) & 1U) ? 0 : 1;
    c.budget = 0;
    return {inst.graph, std::move(c)};
}

namespace {

struct Best {
    std::optional<Rational> cost;
    std::vector<std::pair<int, int>> colors;
};

class Weighted {
public:
    Weighted(SearchState& st, const CostTables& costs, const SeparatorProvider& provider)
        : st_(st), costs_(costs), provider_(provider), hn_(st.target().size()),
          extra_(static_cast<std::size_t>(st.graph().num_vertices() * hn_), Rational(0))
    {
    }

    std::optional<Rational> solve(std::span<const int> verts, const std::optional<Rational>& cap, int depth)
    {
        st_.node(depth);
        auto m0 = mark();
        auto result = solve_here(verts, cap, depth);
        undo(m0);
        if (result.cost)
            for (auto [v, c] : result.colors)
                st_.colors()[v] = c;
        return result.cost;
    }

private:
    struct Mark {
        std::size_t s, w;
    };
    struct WEntry {
        std::size_t idx;
        Rational old;
    };

    Mark mark() const { return {st_.mark(), wtrail_.size()}; }
    void undo(Mark m)
    {
        st_.undo(m.s);
        while (wtrail_.size() > m.w) {
            extra_[wtrail_.back().idx] = wtrail_.back().old;
            wtrail_.pop_back();
        }
    }

    Rational eff(int v, int b) const { return costs_.vcost[v][b] + extra_[static_cast<std::size_t>(v * hn_ + b)]; }

    Rational min_eff(int v) const
    {
        std::optional<Rational> m;
        for_each_color(st_.list(v), [&](int b) {
            Rational e = eff(v, b);
            if (! m || e < *m)
                m = e;
        });
        return m ? *m : Rational(0);
    }

    Rational lower_bound(std::span<const int> verts) const
    {
        Rational lb = 0;
        for (int v : verts)
            if (st_.alive(v))
                lb += min_eff(v);
        return lb;
    }

    // Charges v's color and moves the edge costs onto its live neighbors.
    bool assign(int v, int c, Rational& acc)
    {
        if (! ((st_.list(v) >> c) & 1U))
            return false;
        acc += eff(v, c);
        if (costs_.ecost)
            for (int u : st_.graph().neighbors(v)) {
                if (! st_.alive(u))
                    continue;
                for (int b = 0; b < hn_; ++b) {
                    Rational q = costs_.edge_cost(v, u, c, b);
                    if (q == 0)
                        continue;
                    std::size_t idx = static_cast<std::size_t>(u * hn_ + b);
                    wtrail_.push_back({idx, extra_[idx]});
                    extra_[idx] += q;
                }
            }
        return st_.assign(v, c);
    }

    std::vector<int> by_cost(int v) const
    {
        std::vector<int> colors;
        for_each_color(st_.list(v), [&](int c) { colors.push_back(c); });
        std::stable_sort(colors.begin(), colors.end(), [&](int a, int b) { return eff(v, a) < eff(v, b); });
        return colors;
    }

    static bool pruned(const Rational& value, const Best& best, const std::optional<Rational>& cap)
    {
        return (best.cost && value >= *best.cost) || (cap && value > *cap);
    }

    void record(std::span<const int> verts, const Rational& total, Best& best)
    {
        best.cost = total;
        best.colors.clear();
        for (int v : verts)
            best.colors.emplace_back(v, st_.colors()[v]);
    }

    void branch_and_bound(std::span<const int> verts, std::span<const int> scope, const Rational& acc,
        const std::optional<Rational>& cap, Best& best, int depth)
    {
        st_.node(depth);
        auto live = st_.alive_in(verts);
        Rational lb = 0;
        std::vector<Rational> mins;
        for (int v : live) {
            if (! st_.list(v))
                return;
            mins.push_back(min_eff(v));
            lb += mins.back();
        }
        if (pruned(acc + lb, best, cap))
            return;

        // Drop colors whose cost alone breaks the current limit.
        std::vector<int> seeds;
        for (std::size_t i = 0; i < live.size(); ++i) {
            int v = live[i];
            ColorSet keep = 0;
            Rational base = acc + lb - mins[i];
            for_each_color(st_.list(v), [&](int b) {
                if (! pruned(base + eff(v, b), best, cap))
                    keep |= color_bit(b);
            });
            if (keep != st_.list(v)) {
                if (! st_.restrict(v, keep))
                    return;
                seeds.push_back(v);
            }
        }
        if (! seeds.empty() && ! st_.propagate(seeds))
            return;

        int pick = -1;
        for (int v : live)
            if (st_.alive(v) && (pick < 0 || color_count(st_.list(v)) < color_count(st_.list(pick))))
                pick = v;
        if (pick < 0) {
            record(scope, acc, best);
            return;
        }
        for (int c : by_cost(pick)) {
            auto m = mark();
            Rational next = acc;
            if (assign(pick, c, next))
                branch_and_bound(live, scope, next, cap, best, depth + 1);
            undo(m);
        }
    }

    Best solve_base(std::span<const int> live, const std::optional<Rational>& cap, int depth)
    {
        Best best;
        auto m = mark();
        branch_and_bound(live, live, 0, cap, best, depth);
        undo(m);
        return best;
    }

    Best solve_here(std::span<const int> verts, const std::optional<Rational>& cap, int depth)
    {
        Best none;
        auto live = st_.alive_in(verts);
        for (int v : live)
            if (! st_.list(v))
                return none;
        if (! st_.propagate(live))
            return none;
        Best out;
        if (live.empty()) {
            out.cost = Rational(0);
            return out;
        }
        auto comps = st_.components(live);
        if (comps.size() > 1) {
            Rational total = 0, rest = 0;
            std::vector<Rational> lbs;
            for (const auto& c : comps) {
                lbs.push_back(lower_bound(c));
                rest += lbs.back();
            }
            for (std::size_t i = 0; i < comps.size(); ++i) {
                rest -= lbs[i];
                std::optional<Rational> sub;
                if (cap)
                    sub = *cap - total - rest;
                auto r = solve(comps[i], sub, depth + 1);
                if (! r)
                    return none;
                total += *r;
            }
            out.cost = total;
            for (int v : live)
                out.colors.emplace_back(v, st_.colors()[v]);
            return out;
        }
        if (static_cast<int>(live.size()) <= st_.config().base_n || ! provider_)
            return solve_base(live, cap, depth + 1);

        Graph sub = induced_subgraph(st_.graph(), live);
        auto sep = provider_(sub, live);
        bool usable = sep && ! sep->cliques.empty();
        if (usable)
            for (const auto& c : sep->cliques)
                usable = usable && ! c.empty() && is_clique(sub, c);
        if (! usable) {
            ++st_.stats().fallbacks;
            return solve_base(live, cap, depth + 1);
        }
        ++st_.stats().separators;
        std::vector<int> order;
        for (const auto& c : sep->cliques)
            for (int v : c)
                order.push_back(live[v]);
        Best best;
        color_separator(order, 0, 0, live, cap, best, depth + 1);
        return best;
    }

    void color_separator(const std::vector<int>& order, std::size_t i, const Rational& acc, std::span<const int> live,
        const std::optional<Rational>& cap, Best& best, int depth)
    {
        if (pruned(acc + lower_bound(live), best, cap))
            return;
        if (i == order.size()) {
            ++st_.stats().separator_colorings;
            auto comps = st_.components(st_.alive_in(live));
            Rational total = acc, rest = 0;
            std::vector<Rational> lbs;
            for (const auto& c : comps) {
                lbs.push_back(lower_bound(c));
                rest += lbs.back();
            }
            for (std::size_t k = 0; k < comps.size(); ++k) {
                rest -= lbs[k];
                std::optional<Rational> bound;
                if (best.cost)
                    bound = *best.cost - total - rest;
                if (cap && (! bound || *cap - total - rest < *bound))
                    bound = *cap - total - rest;
                auto r = solve(comps[k], bound, depth);
                if (! r)
                    return;
                total += *r;
            }
            if (! pruned(total, best, cap))
                record(live, total, best);
            return;
        }
        int v = order[i];
        if (! st_.alive(v)) {
            color_separator(order, i + 1, acc, live, cap, best, depth);
            return;
        }
        st_.node(depth);
        for (int c : by_cost(v)) {
            auto m = mark();
            Rational next = acc;
            if (assign(v, c, next))
                color_separator(order, i + 1, next, live, cap, best, depth);
            undo(m);
        }
    }

    SearchState& st_;
    const CostTables& costs_;
    const SeparatorProvider& provider_;
    int hn_;
    std::vector<Rational> extra_;
    std::vector<WEntry> wtrail_;
};

void check_tables(const Graph& g, const TargetGraph& h, const CostTables& costs)
{
    if (costs.vcost.size() != static_cast<std::size_t>(g.num_vertices()))
        throw PreconditionError("vertex cost table has the wrong number of rows");
    for (const auto& row : costs.vcost) {
        if (row.size() != static_cast<std::size_t>(h.size()))
            throw PreconditionError("vertex cost table has the wrong number of columns");
        for (const auto& q : row)
            if (q < 0)
                throw PreconditionError("costs must be nonnegative");
    }
    if (costs.ecost)
        for (const auto& [e, m] : *costs.ecost)
            if (! g.has_edge(e.first, e.second) || m.size() != static_cast<std::size_t>(h.size() * h.size()))
                throw PreconditionError("edge cost entry does not match an edge of G");
}

MinCostResult solve_weighted(const ListInstance& inst, const CostTables& costs, const SeparatorProvider& provider,
    const SolveConfig& cfg, const std::optional<Rational>& cap)
{
    const Graph& g = inst.graph;
    check_tables(g, inst.h(), costs);
    SearchState st(inst.graph, inst.h(), inst.lists, cfg);
    Weighted w(st, costs, provider);
    MinCostResult out;
    std::vector<int> all(g.num_vertices());
    for (int i = 0; i < g.num_vertices(); ++i)
        all[i] = i;
    try {
        out.cost = w.solve(all, cap, 0);
        out.answer = out.cost ? Answer::yes : Answer::no;
    }
    catch (const detail::LimitReached&) {
        out.answer = Answer::timeout;
        out.cost.reset();
    }
    out.stats = st.stats();
    if (out.cost) {
        out.witness = st.colors();
        if (! verify_homomorphism(inst, out.witness) || total_cost(g, costs, out.witness) != *out.cost)
            throw Error("internal error: weighted witness does not match its cost");
    }
    return out;
}

}

MinCostResult solve_mincost(const ListInstance& inst, const CostTables& costs, const SeparatorProvider& provider,
    const SolveConfig& cfg, const std::optional<Rational>& cap)
{
    if (costs.ecost)
        throw PreconditionError("solve_mincost takes vertex costs only; use solve_whom");
    return solve_weighted(inst, costs, provider, cfg, cap);
}

MinCostResult solve_whom(const ListInstance& inst, const CostTables& costs, const SeparatorProvider& provider,
    const SolveConfig& cfg, const std::optional<Rational>& cap)
{
    return solve_weighted(inst, costs, provider, cfg, cap);
}

MinCostResult solve_mincost(const Graph& g, const TargetGraph& h, const CostTables& costs, const SeparatorProvider& provider,
    const SolveConfig& cfg, const std::optional<Rational>& cap)
{
    return solve_mincost(make_instance(h, g, std::vector<ColorSet>(g.num_vertices(), h.all())), costs, provider, cfg, cap);
}

MinCostResult solve_whom(const Graph& g, const TargetGraph& h, const CostTables& costs, const SeparatorProvider& provider,
    const SolveConfig& cfg, const std::optional<Rational>& cap)
{
    return solve_whom(make_instance(h, g, std::vector<ColorSet>(g.num_vertices(), h.all())), costs, provider, cfg, cap);
}

TransferResult transfer_edge_costs(const Graph& g, const CostTables& costs, const Assignment& colored, int h)
{
    int n = g.num_vertices();
    if (colored.size() != static_cast<std::size_t>(n))
        throw PreconditionError("colored fragment must cover every vertex slot");
    TransferResult out;
    std::vector<int> local(n, -1);
    for (int v = 0; v < n; ++v)
        if (colored[v] == unassigned) {
            local[v] = static_cast<int>(out.vertex_map.size());
            out.vertex_map.push_back(v);
        }
        else
            out.offset += costs.vcost[v][colored[v]];
    out.graph = Graph(static_cast<int>(out.vertex_map.size()));
    out.costs = zero_costs(static_cast<int>(out.vertex_map.size()), h);
    for (std::size_t i = 0; i < out.vertex_map.size(); ++i)
        out.costs.vcost[i] = costs.vcost[out.vertex_map[i]];
    for (auto [u, v] : g.edges()) {
        bool cu = colored[u] != unassigned, cv = colored[v] != unassigned;
        if (cu && cv)
            out.offset += costs.edge_cost(u, v, colored[u], colored[v]);
        else if (cu || cv) {
            int c = cu ? u : v, r = cu ? v : u;
            for (int b = 0; b < h; ++b)
                out.costs.vcost[local[r]][b] += costs.edge_cost(c, r, colored[c], b);
        }
        else {
            out.graph.add_edge(local[u], local[v]);
            if (costs.ecost) {
                auto it = costs.ecost->find({u, v});
                if (! out.costs.ecost)
                    out.costs.ecost.emplace();
                if (it != costs.ecost->end())
                    (*out.costs.ecost)[{local[u], local[v]}] = it->second;
            }
        }
    }
    out.costs.budget = costs.budget - out.offset;
    return out;
}

WeightedInstance encode_vertex_cover(const Graph& g)
{
    TargetGraph h({"1", "2"});
    h.add_edge(0, 1);
    h.add_edge(1, 1);
    CostTables c = zero_costs(g.num_vertices(), 2);
    for (auto& row : c.vcost)
        row[1] = 1;
    c.budget = g.num_vertices();
    return {g, std::move(h), std::move(c)};
}

WeightedInstance encode_max_cut(const Graph& g, const std::map<std::pair<int, int>, Rational>& weights)
{
    TargetGraph h({"1", "2"});
    h.add_edge(0, 0);
    h.add_edge(1, 1);
    h.add_edge(0, 1);
    CostTables c = zero_costs(g.num_vertices(), 2);
    c.ecost.emplace();
    Rational total = 0;
    for (auto [u, v] : g.edges()) {
        auto it = weights.find({u, v});
        Rational w = it == weights.end() ? Rational(1) : it->second;
        c.set_edge_cost(u, v, 0, 0, w, 2);
        c.set_edge_cost(u, v, 1, 1, w, 2);
        total += w;
    }
    c.budget = total;
    return {g, std::move(h), std::move(c)};
}

TargetGraph reflexive_c4()
{
    TargetGraph h({"1", "2", "3", "4"});
    for (int a = 0; a < 4; ++a) {
        h.add_edge(a, a);
        h.add_edge(a, (a + 1) % 4);
    }
    return h;
}

namespace {

// Five wedges around the origin (X, A, B, Y, Z); consecutive wedges share a
// ray, and each triangle meets a shared ray only at its own corner there.
const Point& ray_point(int k)
{
    static const Point p[5] = {{20, 0}, {6, 19}, {-16, 12}, {-16, -12}, {6, -19}};
    return p[k % 5];
}

Point scaled(const Point& p, const Rational& s) { return {p.x * s, p.y * s}; }

Point outer_vertex(int k)
{
    const Point &a = ray_point(k), &b = ray_point(k + 1);
    Rational t(9, 10);
    return {t * (a.x + b.x), t * (a.y + b.y)};
}

Point centroid(const Triangle& t)
{
    return {(t.a.x + t.b.x + t.c.x) / 3, (t.a.y + t.b.y + t.c.y) / 3};
}

GeoObject anchored(const Triangle& t)
{
    return GeoObject{t, centroid(t)};
}

Triangle sector_triangle(int k, const Rational& s)
{
    return {scaled(ray_point(k), s), scaled(ray_point(k + 1), s), scaled(outer_vertex(k), s)};
}

const char* const gadget_lists[4][2] = {{"1", "2"}, {"3", "4"}, {"1", "2"}, {"3", "4"}};

}

GadgetTemplate mchom_vertex_template()
{
    GadgetTemplate t;
    t.name = "mchom-vertex";
    for (int k = 0; k < 4; ++k) {
        t.fragment.objects.push_back(anchored(sector_triangle(k, 1)));
        t.lists.push_back({gadget_lists[k][0], gadget_lists[k][1]});
    }
    t.interface = {0, 3};
    t.contract = Contract::mchom_vertex;
    return t;
}

MchomInstance gen_mchom_vc_triangles(const Graph& g, const Rational& k)
{
    int n = g.num_vertices();
    auto edges = g.edges();
    MchomInstance out;
    out.target = reflexive_c4();
    const auto& h = out.target;
    int total = 4 * n + static_cast<int>(edges.size());
    out.graph = Graph(total);

    for (int i = 0; i < n; ++i) {
        Rational s = 1 + Rational(i, 16 * std::max(n, 1));
        for (int t = 0; t < 4; ++t) {
            out.scene.objects.push_back(anchored(sector_triangle(t, s)));
            out.lists.push_back(color_bit(h.index_of(gadget_lists[t][0])) | color_bit(h.index_of(gadget_lists[t][1])));
        }
    }
    for (auto [i, j] : edges) {
        Rational si = 1 + Rational(i, 16 * n), sj = 1 + Rational(j, 16 * n);
        out.scene.objects.push_back(anchored(Triangle{scaled(ray_point(0), si), scaled(ray_point(4), sj), outer_vertex(4)}));
        out.lists.push_back(color_bit(h.index_of("2")) | color_bit(h.index_of("3")));
    }

    // Same-type triangles form cliques; gadget paths x-a-b-y; z meets x_i and y_j.
    for (int t = 0; t < 4; ++t)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                out.graph.add_edge(4 * i + t, 4 * j + t);
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < 3; ++t)
            out.graph.add_edge(4 * i + t, 4 * i + t + 1);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        int z = 4 * n + static_cast<int>(e);
        for (std::size_t f = e + 1; f < edges.size(); ++f)
            out.graph.add_edge(z, 4 * n + static_cast<int>(f));
        out.graph.add_edge(z, 4 * edges[e].first);
        out.graph.add_edge(z, 4 * edges[e].second + 3);
    }

    out.costs = zero_costs(total, h.size());
    out.costs.budget = k;
    Rational outside = k + 1;
    for (int v = 0; v < total; ++v)
        for (int a = 0; a < h.size(); ++a)
            if (! ((out.lists[v] >> a) & 1U))
                out.costs.vcost[v][a] = outside;
    // Selecting a vertex into the cover is the coloring with x -> 2.
    int selected = h.index_of("2");
    for (int i = 0; i < n; ++i)
        out.costs.vcost[4 * i][selected] = 1;
    return out;
}

}
