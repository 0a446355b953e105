#include "geohom/solver.hpp"

#include "geohom/errors.hpp"
#include "search_state.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace geohom {

using detail::SearchState;

ListInstance make_instance(std::shared_ptr<const TargetGraph> h, Graph g, std::vector<ColorSet> lists)
{
    if (lists.size() != static_cast<std::size_t>(g.num_vertices()))
        throw PreconditionError("instance needs exactly one list per vertex");
    for (ColorSet l : lists)
        if (l & ~h->all())
            throw PreconditionError("list refers to a color outside V(H)");
    return ListInstance{std::move(h), std::move(g), std::move(lists)};
}

ListInstance make_instance(const TargetGraph& h, Graph g, std::vector<ColorSet> lists)
{
    return make_instance(std::make_shared<const TargetGraph>(h), std::move(g), std::move(lists));
}

std::string to_string(Answer a)
{
    switch (a) {
    case Answer::yes: return "YES";
    case Answer::no: return "NO";
    case Answer::timeout: return "TIMEOUT";
    }
    return "?";
}

void SolveStats::merge(const SolveStats& o)
{
    nodes += o.nodes;
    max_depth = std::max(max_depth, o.max_depth);
    separators += o.separators;
    separator_colorings += o.separator_colorings;
    fallbacks += o.fallbacks;
    rc_branches += o.rc_branches;
    two_sat_calls += o.two_sat_calls;
    max_area_ratio = std::max(max_area_ratio, o.max_area_ratio);
}

bool verify_homomorphism(const ListInstance& inst, const Assignment& f)
{
    const auto& h = inst.h();
    if (f.size() != static_cast<std::size_t>(inst.size()))
        return false;
    for (int v = 0; v < inst.size(); ++v)
        if (f[v] < 0 || f[v] >= h.size() || ! ((inst.lists[v] >> f[v]) & 1U))
            return false;
    for (auto [u, v] : inst.graph.edges())
        if (! h.adjacent(f[u], f[v]))
            return false;
    return true;
}


namespace {

std::vector<int> all_vertices(int n)
{
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = i;
    return v;
}

}

PreprocessResult preprocess(const ListInstance& inst)
{
    SolveConfig cfg;
    SearchState st(inst.graph, inst.h(), inst.lists, cfg);
    PreprocessResult out;
    auto all = all_vertices(inst.size());
    out.forced.assign(inst.size(), unassigned);
    if (! detail::reduce_lists(st, all)) {
        out.unsat = true;
        out.reduced = make_instance(inst.target, Graph(0), {});
        return out;
    }
    std::vector<ColorSet> lists;
    for (int v : all) {
        if (st.alive(v)) {
            out.vertex_map.push_back(v);
            lists.push_back(st.list(v));
        }
        else
            out.forced[v] = st.colors()[v];
    }
    out.reduced = make_instance(inst.target, induced_subgraph(inst.graph, out.vertex_map), std::move(lists));
    return out;
}

SolveResult solve_bruteforce(const ListInstance& inst, const SolveConfig& cfg)
{
    return detail::run_search(inst, cfg, [&](SearchState& st) { return detail::brute_force(st, all_vertices(inst.size()), 0); });
}

SolveResult solve_2sat(const ListInstance& inst, const SolveConfig& cfg)
{
    for (ColorSet l : inst.lists)
        if (color_count(l) > 2)
            throw PreconditionError("solve_2sat: a list has more than two colors");
    return detail::run_search(inst, cfg, [&](SearchState& st) { return detail::two_sat(st, all_vertices(inst.size())); });
}

namespace {

bool clique_colorings_from(std::span<const int> clique, const ListInstance& inst, std::size_t i, ColorSet used, Assignment& f,
    const std::function<bool(const Assignment&)>& visit)
{
    if (i == clique.size())
        return visit(f);
    int v = clique[i];
    bool go_on = true;
    // A color may join iff it is adjacent to every color used so far; this
    // also keeps each irreflexive color to a single vertex.
    for_each_color(inst.lists[v], [&](int c) {
        if (! go_on || (used & ~inst.h().neighbors(c)))
            return;
        f[v] = c;
        go_on = clique_colorings_from(clique, inst, i + 1, used | color_bit(c), f, visit);
    });
    f[v] = unassigned;
    return go_on;
}

}

void enumerate_clique_colorings(std::span<const int> clique, const ListInstance& inst, const std::function<bool(const Assignment&)>& visit)
{
    if (! is_clique(inst.graph, clique))
        throw PreconditionError("enumerate_clique_colorings: vertex set is not a clique");
    Assignment f(inst.size(), unassigned);
    clique_colorings_from(clique, inst, 0, 0, f, visit);
}

double degree_threshold(std::size_t n, const SolveConfig& cfg)
{
    double x = static_cast<double>(n);
    if (cfg.log_threshold)
        return std::sqrt(x) * std::pow(std::log2(std::max(x, 2.0)), 2.0 / 3.0);
    return std::pow(x, cfg.deg_exponent) - 1e-9;
}

namespace {

std::vector<int> to_global(std::span<const int> local, std::span<const int> ids)
{
    std::vector<int> out;
    for (int v : local)
        out.push_back(ids[v]);
    return out;
}

bool solve_parts(SearchState& st, std::span<const int> live, int depth, bool (*rec)(SearchState&, std::span<const int>, int))
{
    auto rest = st.alive_in(live);
    for (const auto& comp : st.components(rest))
        if (! rec(st, comp, depth))
            return false;
    return true;
}

bool branch_on_vertex(SearchState& st, int v, std::span<const int> live, int depth, bool (*rec)(SearchState&, std::span<const int>, int))
{
    bool found = false;
    for_each_color(st.list(v), [&](int c) {
        if (found)
            return;
        auto m = st.mark();
        if (st.assign(v, c) && rec(st, live, depth))
            found = true;
        else
            st.undo(m);
    });
    return found;
}

bool string_rec(SearchState& st, std::span<const int> verts, int depth)
{
    st.node(depth);
    if (! detail::reduce_lists(st, verts))
        return false;
    auto live = st.alive_in(verts);
    if (live.empty())
        return true;
    auto comps = st.components(live);
    if (comps.size() > 1) {
        for (const auto& c : comps)
            if (! string_rec(st, c, depth + 1))
                return false;
        return true;
    }
    const auto& cfg = st.config();
    const auto& h = st.target();
    if (static_cast<int>(live.size()) <= cfg.base_n)
        return detail::brute_force(st, live, depth + 1);

    int v = live.front();
    for (int u : live)
        if (st.live_degree(u) > st.live_degree(v))
            v = u;

    if (st.live_degree(v) >= degree_threshold(live.size(), cfg)) {
        std::map<ColorSet, int> freq;
        for (int u : st.graph().neighbors(v))
            if (st.alive(u))
                ++freq[st.list(u)];
        ColorSet common = 0;
        int best = 0;
        for (auto [l, c] : freq)
            if (c > best) {
                best = c;
                common = l;
            }
        for (int a = 0; a < h.size(); ++a) {
            if (! ((st.list(v) >> a) & 1U) || ! (common & ~h.neighbors(a)))
                continue;
            auto m = st.mark();
            if (st.assign(v, a) && string_rec(st, live, depth + 1))
                return true;
            st.undo(m);
            m = st.mark();
            int seed[] = {v};
            if (st.restrict(v, ~color_bit(a)) && st.propagate(seed) && string_rec(st, live, depth + 1))
                return true;
            st.undo(m);
            return false;
        }
    }

    Graph sub = induced_subgraph(st.graph(), live);
    auto sep = balanced_vertex_separator(sub, cfg.delta, separator_budget(sub.num_edges(), cfg.size_budget_factor), cfg.seed);
    if (! sep || sep->empty()) {
        ++st.stats().fallbacks;
        return branch_on_vertex(st, v, live, depth + 1, string_rec);
    }
    ++st.stats().separators;
    auto order = to_global(*sep, live);
    return detail::for_each_coloring(st, order, [&] { return solve_parts(st, live, depth + 1, string_rec); });
}

}

SolveResult solve_string(const ListInstance& inst, const SolveConfig& cfg)
{
    if (find_predator(inst.h()))
        throw PredatorPresent();
    return detail::run_search(inst, cfg, [&](SearchState& st) { return string_rec(st, all_vertices(inst.size()), 0); });
}

SeparatorProvider scene_separator_provider(const Scene& scene, const Rational& delta)
{
    return [&scene, delta](const Graph& sub, std::span<const int> ids) { return clique_based_separator(subscene(scene, ids), sub, delta); };
}

SeparatorProvider fallback_separator_provider(const Rational& delta, const Rational& budget_factor, std::uint64_t seed)
{
    return [delta, budget_factor, seed](const Graph& sub, std::span<const int>) -> std::optional<CliqueSeparator> {
        auto s = balanced_vertex_separator(sub, delta, separator_budget(sub.num_edges(), budget_factor), seed);
        if (! s)
            return std::nullopt;
        return CliqueSeparator{greedy_clique_cover(sub, *s), delta};
    };
}

namespace {

struct CliqueBased {
    const SeparatorProvider& provider;

    bool rec(SearchState& st, std::span<const int> verts, int depth)
    {
        st.node(depth);
        auto live = st.alive_in(verts);
        for (int v : live)
            if (! st.list(v))
                return false;
        if (! st.propagate(live))
            return false;
        for (int v : live)
            if (st.alive(v) && color_count(st.list(v)) == 1) {
                st.colors()[v] = lowest_color(st.list(v));
                st.kill(v);
            }
        live = st.alive_in(live);
        if (live.empty())
            return true;
        auto comps = st.components(live);
        if (comps.size() > 1) {
            for (const auto& c : comps)
                if (! rec(st, c, depth + 1))
                    return false;
            return true;
        }
        if (static_cast<int>(live.size()) <= st.config().base_n)
            return detail::brute_force(st, live, depth + 1);

        Graph sub = induced_subgraph(st.graph(), live);
        std::optional<CliqueSeparator> sep;
        if (provider)
            sep = provider(sub, live);
        bool usable = sep && ! sep->cliques.empty();
        if (usable)
            for (const auto& c : sep->cliques)
                usable = usable && ! c.empty() && is_clique(sub, c);
        if (! usable) {
            ++st.stats().fallbacks;
            return detail::brute_force(st, live, depth + 1);
        }
        ++st.stats().separators;
        std::vector<int> order;
        for (const auto& c : sep->cliques)
            for (int v : c)
                order.push_back(live[v]);
        return detail::for_each_coloring(st, order, [&] {
            auto rest = st.alive_in(live);
            for (const auto& comp : st.components(rest))
                if (! rec(st, comp, depth + 1))
                    return false;
            return true;
        });
    }
};

}

SolveResult solve_cliquebased(const ListInstance& inst, const SeparatorProvider& provider, const SolveConfig& cfg)
{
    CliqueBased cb{provider};
    return detail::run_search(inst, cfg, [&](SearchState& st) { return cb.rec(st, all_vertices(inst.size()), 0); });
}

}
