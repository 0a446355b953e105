#include "search_state.hpp"

#include "geohom/errors.hpp"

#include <algorithm>
#include <array>

namespace geohom::detail {

SearchState::SearchState(const Graph& g, const TargetGraph& h, std::vector<ColorSet> lists, const SolveConfig& cfg)
    : g_(g), h_(h), cfg_(cfg), lists_(std::move(lists)), alive_(g.num_vertices(), 1), color_(g.num_vertices(), unassigned),
      queued_(g.num_vertices(), 0), stamp_(g.num_vertices(), 0)
{
    if (cfg.time_limit > 0)
        deadline_ = std::chrono::steady_clock::now()
            + std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(cfg.time_limit));
}

void SearchState::undo(std::size_t m)
{
    while (trail_.size() > m) {
        const Entry& e = trail_.back();
        lists_[e.v] = e.list;
        alive_[e.v] = e.alive;
        trail_.pop_back();
    }
}

bool SearchState::restrict(int v, ColorSet mask)
{
    ColorSet next = lists_[v] & mask;
    if (next == lists_[v])
        return true;
    if (! next)
        return false;
    save(v);
    lists_[v] = next;
    return true;
}

void SearchState::kill(int v)
{
    if (! alive_[v])
        return;
    save(v);
    alive_[v] = 0;
}

bool SearchState::assign(int v, int c)
{
    if (! ((lists_[v] >> c) & 1U))
        return false;
    restrict(v, color_bit(c));
    color_[v] = c;
    kill(v);
    ColorSet allowed = h_.neighbors(c);
    std::vector<int> seeds;
    for (int u : g_.neighbors(v)) {
        if (! alive_[u])
            continue;
        ColorSet before = lists_[u];
        if (! restrict(u, allowed))
            return false;
        if (lists_[u] != before)
            seeds.push_back(u);
    }
    return propagate(seeds);
}

bool SearchState::propagate(std::span<const int> seeds)
{
    queue_.clear();
    for (int v : seeds)
        if (alive_[v] && ! queued_[v]) {
            queued_[v] = 1;
            queue_.push_back(v);
        }
    bool ok = true;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
        int v = queue_[head];
        queued_[v] = 0;
        if (! ok || ! alive_[v])
            continue;
        ColorSet support = h_.neighbors_of_set(lists_[v]);
        for (int u : g_.neighbors(v)) {
            if (! alive_[u])
                continue;
            ColorSet before = lists_[u];
            if (! restrict(u, support)) {
                ok = false;
                break;
            }
            if (lists_[u] != before && ! queued_[u]) {
                queued_[u] = 1;
                queue_.push_back(u);
            }
        }
    }
    for (std::size_t head = 0; head < queue_.size(); ++head)
        queued_[queue_[head]] = 0;
    return ok;
}

std::vector<int> SearchState::alive_in(std::span<const int> verts) const
{
    std::vector<int> out;
    for (int v : verts)
        if (alive_[v])
            out.push_back(v);
    return out;
}

std::vector<std::vector<int>> SearchState::components(std::span<const int> verts)
{
    ++epoch_;
    for (int v : verts)
        if (alive_[v])
            stamp_[v] = epoch_;
    std::vector<std::vector<int>> out;
    std::vector<int> stack;
    for (int s : verts) {
        if (stamp_[s] != epoch_)
            continue;
        std::vector<int> comp;
        stamp_[s] = -epoch_;
        stack.push_back(s);
        while (! stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : g_.neighbors(v))
                if (stamp_[w] == epoch_) {
                    stamp_[w] = -epoch_;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

int SearchState::live_degree(int v) const
{
    int d = 0;
    for (int u : g_.neighbors(v))
        d += alive_[u] ? 1 : 0;
    return d;
}

void SearchState::node(int depth)
{
    ++stats_.nodes;
    stats_.max_depth = std::max(stats_.max_depth, depth);
    if (cfg_.node_limit && stats_.nodes > cfg_.node_limit)
        throw LimitReached{};
    if (deadline_ && (stats_.nodes & 255U) == 0 && std::chrono::steady_clock::now() > *deadline_)
        throw LimitReached{};
}

namespace {

bool mrv(SearchState& st, std::span<const int> verts, int depth)
{
    st.node(depth);
    int best = -1;
    for (int v : verts)
        if (st.alive(v) && (best < 0 || color_count(st.list(v)) < color_count(st.list(best))))
            best = v;
    if (best < 0)
        return true;
    bool found = false;
    for_each_color(st.list(best), [&](int c) {
        if (found)
            return;
        auto m = st.mark();
        if (st.assign(best, c) && mrv(st, verts, depth + 1))
            found = true;
        else
            st.undo(m);
    });
    return found;
}

}

bool brute_force(SearchState& st, std::span<const int> verts, int depth)
{
    auto live = st.alive_in(verts);
    if (! st.propagate(live))
        return false;
    return mrv(st, live, depth);
}

namespace {

// Iterative Tarjan; component ids are assigned in completion order, so a
// smaller id is closer to a sink of the condensation.
std::vector<int> strongly_connected(const std::vector<std::vector<int>>& adj)
{
    int n = static_cast<int>(adj.size());
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
    std::vector<char> on_stack(n, 0);
    std::vector<std::pair<int, std::size_t>> call;
    int counter = 0, comps = 0;
    for (int s = 0; s < n; ++s) {
        if (index[s] != -1)
            continue;
        call.emplace_back(s, 0);
        index[s] = low[s] = counter++;
        stack.push_back(s);
        on_stack[s] = 1;
        while (! call.empty()) {
            auto& [v, i] = call.back();
            if (i < adj[v].size()) {
                int w = adj[v][i++];
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.emplace_back(w, 0);
                }
                else if (on_stack[w])
                    low[v] = std::min(low[v], index[w]);
                continue;
            }
            if (low[v] == index[v]) {
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = comps;
                } while (w != v);
                ++comps;
            }
            int done = v;
            call.pop_back();
            if (! call.empty())
                low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }
    return comp;
}

}

bool two_sat(SearchState& st, std::span<const int> verts)
{
    ++st.stats().two_sat_calls;
    auto live = st.alive_in(verts);
    int k = static_cast<int>(live.size());
    std::vector<int> pos(st.graph().num_vertices(), -1);
    std::vector<std::array<int, 2>> choice(k);
    for (int i = 0; i < k; ++i) {
        int v = live[i];
        pos[v] = i;
        ColorSet l = st.list(v);
        if (! l)
            return false;
        if (color_count(l) > 2)
            throw PreconditionError("2-SAT core needs lists of size at most 2");
        int a = lowest_color(l);
        ColorSet rest = l & ~color_bit(a);
        choice[i] = {a, rest ? lowest_color(rest) : a};
    }

    // Literal 2i: vertex i takes its first color; 2i+1: its second.
    std::vector<std::vector<int>> imp(2 * k);
    for (int i = 0; i < k; ++i)
        if (choice[i][0] == choice[i][1])
            imp[2 * i + 1].push_back(2 * i);
    const TargetGraph& h = st.target();
    for (int i = 0; i < k; ++i) {
        int v = live[i];
        for (int u : st.graph().neighbors(v)) {
            int j = pos[u];
            if (j <= i)
                continue;
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y) {
                    if ((x == 1 && choice[i][0] == choice[i][1]) || (y == 1 && choice[j][0] == choice[j][1]))
                        continue;
                    if (h.adjacent(choice[i][x], choice[j][y]))
                        continue;
                    int li = 2 * i + x, lj = 2 * j + y;
                    imp[li].push_back(lj ^ 1);
                    imp[lj].push_back(li ^ 1);
                }
        }
    }
    auto comp = strongly_connected(imp);
    for (int i = 0; i < k; ++i)
        if (comp[2 * i] == comp[2 * i + 1])
            return false;
    auto& colors = st.colors();
    for (int i = 0; i < k; ++i)
        colors[live[i]] = comp[2 * i] < comp[2 * i + 1] ? choice[i][0] : choice[i][1];
    return true;
}

ColorSet incomparable_core(const TargetGraph& h, ColorSet list)
{
    ColorSet keep = list;
    for_each_color(list, [&](int a) {
        ColorSet na = h.neighbors(a);
        for_each_color(list, [&](int b) {
            if (a == b)
                return;
            ColorSet nb = h.neighbors(b);
            bool dominated = (na & nb) == na && (na != nb || h.label(a) < h.label(b));
            if (dominated)
                keep &= ~color_bit(a);
        });
    });
    return keep;
}

bool reduce_lists(SearchState& st, std::span<const int> verts)
{
    for (;;) {
        auto before = st.mark();
        auto live = st.alive_in(verts);
        for (int v : live)
            st.restrict(v, incomparable_core(st.target(), st.list(v)));
        if (! st.propagate(live))
            return false;
        for (int v : live)
            if (st.alive(v) && color_count(st.list(v)) == 1) {
                st.colors()[v] = lowest_color(st.list(v));
                st.kill(v);
            }
        if (st.mark() == before)
            return true;
    }
}

namespace {

bool colorings_from(SearchState& st, std::span<const int> order, std::size_t i, const std::function<bool()>& visit)
{
    if (i == order.size()) {
        ++st.stats().separator_colorings;
        return visit();
    }
    int v = order[i];
    if (! st.alive(v))
        return colorings_from(st, order, i + 1, visit);
    st.node(0);
    bool found = false;
    for_each_color(st.list(v), [&](int c) {
        if (found)
            return;
        auto m = st.mark();
        if (st.assign(v, c) && colorings_from(st, order, i + 1, visit))
            found = true;
        else
            st.undo(m);
    });
    return found;
}

}

bool for_each_coloring(SearchState& st, std::span<const int> order, const std::function<bool()>& visit)
{
    return colorings_from(st, order, 0, visit);
}

Assignment collect_witness(SearchState& st)
{
    return st.colors();
}

}
