#include "geohom/fat_solver.hpp"

#include "geohom/errors.hpp"
#include "geohom/separators.hpp"
#include "geohom/solver.hpp"
#include "search_state.hpp"

#include <algorithm>
#include <set>

namespace geohom {

using detail::SearchState;

bool is_rc_instance(const ListInstance& inst)
{
    const auto& h = inst.h();
    for (ColorSet l : inst.lists) {
        bool ok = true;
        for_each_color(l, [&](int a) { ok = ok && (h.neighbors(a) & l) == l; });
        if (! ok)
            return false;
    }
    return true;
}

namespace {

class RcStream {
public:
    RcStream(SearchState& st, const std::vector<std::vector<int>>& cells, bool propagate, std::function<bool()> visit)
        : st_(st), cells_(cells), propagate_(propagate), visit_(std::move(visit)),
          irreflexive_(reflexive_partition(st.target()).irreflexive), cliques_(maximal_reflexive_cliques(st.target()))
    {
    }

    bool run() { return cell(0); }

private:
    bool cell(std::size_t ci)
    {
        if (ci == cells_.size())
            return visit_();
        auto members = st_.alive_in(cells_[ci]);
        std::vector<int> rest;
        return guess(ci, members, 0, 0, rest);
    }

    bool guess(std::size_t ci, const std::vector<int>& members, std::size_t idx, ColorSet used, std::vector<int>& rest)
    {
        if (idx == members.size())
            return close(ci, rest);
        int v = members[idx];
        if (! st_.alive(v))
            return guess(ci, members, idx + 1, used, rest);

        rest.push_back(v);
        if (guess(ci, members, idx + 1, used, rest))
            return true;
        rest.pop_back();

        bool found = false;
        for_each_color(st_.list(v) & irreflexive_ & ~used, [&](int c) {
            if (found)
                return;
            auto m = st_.mark();
            if (st_.assign(v, c) && guess(ci, members, idx + 1, used | color_bit(c), rest))
                found = true;
            else
                st_.undo(m);
        });
        return found;
    }

    bool close(std::size_t ci, const std::vector<int>& rest)
    {
        std::vector<int> live;
        for (int v : rest)
            if (st_.alive(v))
                live.push_back(v);
        if (live.empty())
            return cell(ci + 1);
        std::set<std::vector<ColorSet>> seen;
        for (ColorSet k : cliques_) {
            std::vector<ColorSet> lists;
            bool empty = false;
            for (int v : live) {
                lists.push_back(st_.list(v) & k);
                empty = empty || ! lists.back();
            }
            if (empty || ! seen.insert(lists).second)
                continue;
            auto m = st_.mark();
            bool ok = true;
            for (std::size_t i = 0; i < live.size(); ++i)
                ok = ok && st_.restrict(live[i], lists[i]);
            if (ok && propagate_)
                ok = st_.propagate(live);
            if (ok && cell(ci + 1))
                return true;
            st_.undo(m);
        }
        return false;
    }

    SearchState& st_;
    const std::vector<std::vector<int>>& cells_;
    bool propagate_;
    std::function<bool()> visit_;
    ColorSet irreflexive_;
    std::vector<ColorSet> cliques_;
};

void check_partition(const std::vector<std::vector<int>>& cells, int n)
{
    std::vector<int> seen(n, 0);
    for (const auto& c : cells)
        for (int v : c) {
            if (v < 0 || v >= n)
                throw PreconditionError("cell refers to a vertex out of range");
            ++seen[v];
        }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
        throw PreconditionError("cells must partition the vertex set");
}

std::vector<int> all_vertices(int n)
{
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = i;
    return v;
}

bool rc_solve(SearchState& st, std::span<const int> verts)
{
    auto live = st.alive_in(verts);
    bool small = std::all_of(live.begin(), live.end(), [&](int v) { return color_count(st.list(v)) <= 2; });
    return small ? detail::two_sat(st, live) : detail::brute_force(st, live, 0);
}

}

void reduce_to_rc(const ListInstance& inst, const std::vector<std::vector<int>>& cells,
    const std::function<bool(const RcBranch&)>& visit, RcOptions options)
{
    check_partition(cells, inst.size());
    SolveConfig cfg;
    SearchState st(inst.graph, inst.h(), inst.lists, cfg);
    auto all = all_vertices(inst.size());
    for (int v : all)
        if (! inst.lists[v])
            return;
    RcStream stream(st, cells, options.propagate, [&] {
        RcBranch b;
        std::vector<ColorSet> lists;
        b.forced.assign(inst.size(), unassigned);
        for (int v : all) {
            if (st.alive(v)) {
                b.vertex_map.push_back(v);
                lists.push_back(st.list(v));
            }
            else
                b.forced[v] = st.colors()[v];
        }
        b.instance = make_instance(inst.target, induced_subgraph(inst.graph, b.vertex_map), std::move(lists));
        return ! visit(b);
    });
    stream.run();
}

SolveResult solve_rc(const ListInstance& inst, const SolveConfig& cfg)
{
    if (! is_rc_instance(inst))
        throw PreconditionError("solve_rc: not a reflexive-clique-list instance");
    bool small = std::all_of(inst.lists.begin(), inst.lists.end(), [](ColorSet l) { return color_count(l) <= 2; });
    return small ? solve_2sat(inst, cfg) : solve_bruteforce(inst, cfg);
}

namespace {

struct FatSolver {
    const Scene& scene;

    // (live vertices, their lists) of subproblems already shown to fail.
    // The answer depends on nothing else once earlier choices have been
    // propagated into the lists.
    std::set<std::pair<std::vector<int>, std::vector<ColorSet>>> failed;

    bool rec(SearchState& st, std::span<const int> verts, int depth)
    {
        st.node(depth);
        auto live = st.alive_in(verts);
        for (int v : live)
            if (! st.list(v))
                return false;
        if (! st.propagate(live))
            return false;
        live = st.alive_in(live);
        if (live.empty())
            return true;
        std::vector<ColorSet> lists;
        for (int v : live)
            lists.push_back(st.list(v));
        auto key = std::make_pair(live, std::move(lists));
        if (failed.count(key))
            return false;
        bool ok = solve_live(st, live, depth);
        if (! ok)
            failed.insert(std::move(key));
        return ok;
    }

    bool solve_live(SearchState& st, const std::vector<int>& live, int depth)
    {
        auto comps = st.components(live);
        if (comps.size() > 1) {
            for (const auto& c : comps)
                if (! rec(st, c, depth + 1))
                    return false;
            return true;
        }

        Scene local = subscene(scene, live);
        LineSeparation sep = line_separator_unchecked(local, st.config().c_area);
        if (sep.small_area) {
            std::vector<std::vector<int>> cells;
            for (const auto& part : cell_cliques(local)) {
                std::vector<int> g;
                for (int v : part)
                    g.push_back(live[v]);
                cells.push_back(std::move(g));
            }
            RcStream stream(st, cells, true, [&] {
                ++st.stats().rc_branches;
                return rc_solve(st, live);
            });
            return stream.run();
        }

        ++st.stats().separators;
        double whole = static_cast<double>(area(local));
        for (const auto* part : {&sep.left, &sep.right})
            if (! part->empty())
                st.stats().max_area_ratio = std::max(st.stats().max_area_ratio, static_cast<double>(area(local, *part)) / whole);
        auto global = [&](const std::vector<int>& ids) {
            std::vector<int> out;
            for (int v : ids)
                out.push_back(live[v]);
            return out;
        };
        auto order = global(sep.crossing);
        auto left = global(sep.left), right = global(sep.right);
        return detail::for_each_coloring(st, order, [&] {
            for (const auto* side : {&left, &right}) {
                auto rest = st.alive_in(*side);
                for (const auto& comp : st.components(rest))
                    if (! rec(st, comp, depth + 1))
                        return false;
            }
            return true;
        });
    }
};

}

SolveResult solve_fat(const ListInstance& inst, const Scene& scene, const SolveConfig& cfg)
{
    if (scene.size() != static_cast<std::size_t>(inst.size()))
        throw PreconditionError("solve_fat: scene and instance sizes differ");
    if (cfg.c_area < 1)
        throw PreconditionError("solve_fat: c_area must be at least 1");
    if (! validate_fat_similarly_sized(scene, cfg.r_max).ok())
        throw PreconditionError("solve_fat: scene is not fat and similarly sized for the configured R_max");
    if (! (intersection_graph(scene) == inst.graph))
        throw PreconditionError("solve_fat: scene intersection graph differs from the instance graph");
    FatSolver fs{scene, {}};
    return detail::run_search(inst, cfg, [&](SearchState& st) { return fs.rec(st, all_vertices(inst.size()), 0); });
}

}
