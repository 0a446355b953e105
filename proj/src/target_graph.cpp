#include "geohom/target_graph.hpp"

#include "geohom/errors.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace geohom {

TargetGraph::TargetGraph(std::vector<std::string> labels) : labels_(std::move(labels)), nbr_(labels_.size(), 0)
{
    if (labels_.size() > max_target_vertices)
        throw PreconditionError("target graph has more than 32 vertices");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
        if (l.empty())
            throw PreconditionError("empty vertex label");
        if (! seen.insert(l).second)
            throw PreconditionError("duplicate vertex label '" + l + "'");
    }
}

std::optional<int> TargetGraph::find(std::string_view label) const
{
    for (int a = 0; a < size(); ++a)
        if (labels_[a] == label)
            return a;
    return std::nullopt;
}

int TargetGraph::index_of(std::string_view label) const
{
    auto a = find(label);
    if (! a)
        throw ParseError("unknown target vertex '" + std::string(label) + "'");
    return *a;
}

void TargetGraph::add_edge(int a, int b)
{
    nbr_[a] |= color_bit(b);
    nbr_[b] |= color_bit(a);
}

ColorSet TargetGraph::neighbors_of_set(ColorSet s) const
{
    ColorSet out = 0;
    for_each_color(s, [&](int a) { out |= nbr_[a]; });
    return out;
}

ReflexivePartition reflexive_partition(const TargetGraph& h)
{
    ReflexivePartition p;
    for (int a = 0; a < h.size(); ++a)
        (h.reflexive(a) ? p.reflexive : p.irreflexive) |= color_bit(a);
    return p;
}

namespace {

void clique_subsets(const TargetGraph& h, const std::vector<int>& cand, std::size_t i, ColorSet chosen, ReflexiveClique& best)
{
    if (i == cand.size()) {
        if (color_count(chosen) > best.size)
            best = {color_count(chosen), chosen};
        return;
    }
    if (color_count(chosen) + static_cast<int>(cand.size() - i) <= best.size)
        return;
    int a = cand[i];
    if ((h.neighbors(a) & chosen) == chosen)
        clique_subsets(h, cand, i + 1, chosen | color_bit(a), best);
    clique_subsets(h, cand, i + 1, chosen, best);
}

void bron_kerbosch(const TargetGraph& h, ColorSet r, ColorSet p, ColorSet x, std::vector<ColorSet>& out)
{
    if (! p && ! x) {
        out.push_back(r);
        return;
    }
    for_each_color(p, [&](int a) {
        if (! ((p >> a) & 1U))
            return;
        ColorSet na = h.neighbors(a) & ~color_bit(a);
        bron_kerbosch(h, r | color_bit(a), p & na, x & na, out);
        p &= ~color_bit(a);
        x |= color_bit(a);
    });
}

}

ReflexiveClique max_reflexive_clique(const TargetGraph& h)
{
    if (h.size() > 24)
        throw PreconditionError("mrc: target graph exceeds 24 vertices");
    std::vector<int> cand;
    for_each_color(reflexive_partition(h).reflexive, [&](int a) { cand.push_back(a); });
    ReflexiveClique best;
    clique_subsets(h, cand, 0, 0, best);
    return best;
}

std::vector<ColorSet> maximal_reflexive_cliques(const TargetGraph& h)
{
    std::vector<ColorSet> out;
    ColorSet r = reflexive_partition(h).reflexive;
    if (r)
        bron_kerbosch(h, 0, r, 0, out);
    std::sort(out.begin(), out.end());
    return out;
}

Comparability comparability(const TargetGraph& h, int a, int b)
{
    if (a == b)
        throw PreconditionError("comparability needs two distinct vertices");
    ColorSet na = h.neighbors(a), nb = h.neighbors(b);
    if (na == nb)
        return Comparability::equal;
    if ((na & nb) == na)
        return Comparability::a_le_b;
    if ((na & nb) == nb)
        return Comparability::b_le_a;
    return Comparability::incomparable;
}

std::optional<Predator> find_predator(const TargetGraph& h)
{
    int n = h.size();
    for (int a1 = 0; a1 < n; ++a1)
        for (int a2 = a1 + 1; a2 < n; ++a2) {
            if (comparability(h, a1, a2) != Comparability::incomparable)
                continue;
            ColorSet common = h.neighbors(a1) & h.neighbors(a2);
            for (int b1 = 0; b1 < n; ++b1) {
                if (! ((common >> b1) & 1U))
                    continue;
                for (int b2 = b1 + 1; b2 < n; ++b2)
                    if (((common >> b2) & 1U) && comparability(h, b1, b2) == Comparability::incomparable)
                        return Predator{a1, a2, b1, b2};
            }
        }
    return std::nullopt;
}

bool is_strong_split(const TargetGraph& h)
{
    auto [r, i] = reflexive_partition(h);
    bool ok = true;
    for_each_color(r, [&](int a) { ok = ok && (h.neighbors(a) & r) == r; });
    for_each_color(i, [&](int a) { ok = ok && (h.neighbors(a) & i) == 0; });
    return ok;
}

BipartiteAssociate build_associated_bipartite(const TargetGraph& h)
{
    int n = h.size();
    if (2 * n > max_target_vertices)
        throw PreconditionError("H* would exceed 32 vertices");
    std::vector<std::string> labels;
    BipartiteAssociate out;
    for (int a = 0; a < n; ++a) {
        labels.push_back(h.label(a) + "'");
        out.side_of.push_back(Side::x);
        out.origin.emplace_back(a, 1);
    }
    for (int a = 0; a < n; ++a) {
        labels.push_back(h.label(a) + "''");
        out.side_of.push_back(Side::y);
        out.origin.emplace_back(a, 2);
    }
    out.hstar = TargetGraph(std::move(labels));
    for (int a = 0; a < n; ++a)
        for_each_color(h.neighbors(a), [&](int b) { out.hstar.add_edge(a, n + b); });
    return out;
}

namespace {

ColorSet side_mask(const BipartiteAssociate& assoc, Side s)
{
    ColorSet m = 0;
    for (std::size_t v = 0; v < assoc.side_of.size(); ++v)
        if (assoc.side_of[v] == s)
            m |= color_bit(static_cast<int>(v));
    return m;
}

}

bool is_consistent_instance(const Graph& g, std::span<const ColorSet> lstar, const BipartiteAssociate& assoc)
{
    auto sides = two_coloring(g);
    if (! sides)
        return false;
    ColorSet xm = side_mask(assoc, Side::x), ym = side_mask(assoc, Side::y);
    for (const auto& comp : connected_components(g)) {
        bool forward = true, backward = true;
        for (int v : comp) {
            bool even = (*sides)[v] == 0;
            ColorSet l = lstar[v];
            forward = forward && (l & ~(even ? xm : ym)) == 0;
            backward = backward && (l & ~(even ? ym : xm)) == 0;
        }
        if (! forward && ! backward)
            return false;
    }
    return true;
}

std::vector<ColorSet> project_consistent(const Graph& g, std::span<const ColorSet> lstar, const BipartiteAssociate& assoc)
{
    if (! is_consistent_instance(g, lstar, assoc))
        throw PreconditionError("project_consistent: instance is not consistent");
    int n = static_cast<int>(assoc.origin.size() / 2);
    std::vector<ColorSet> out;
    for (ColorSet l : lstar)
        out.push_back((l | (l >> n)) & (n == 32 ? ~ColorSet{0} : color_bit(n) - 1));
    return out;
}

namespace {

bool enumerate_from(const Graph& g, std::span<const ColorSet> lists, const TargetGraph& h, int v, std::vector<int>& f,
    const std::function<bool(std::span<const int>)>& visit)
{
    if (v == g.num_vertices())
        return visit(f);
    ColorSet allowed = lists[v];
    for (int w : g.neighbors(v))
        if (w < v)
            allowed &= h.neighbors(f[w]);
    bool go_on = true;
    for_each_color(allowed, [&](int c) {
        if (! go_on)
            return;
        f[v] = c;
        go_on = enumerate_from(g, lists, h, v + 1, f, visit);
    });
    f[v] = -1;
    return go_on;
}

}

void for_each_list_homomorphism(const Graph& g, std::span<const ColorSet> lists, const TargetGraph& h,
    const std::function<bool(std::span<const int>)>& visit)
{
    std::vector<int> f(g.num_vertices(), -1);
    enumerate_from(g, lists, h, 0, f, visit);
}

std::vector<std::vector<int>> interface_projection(const Gadget& g, const TargetGraph& h)
{
    std::set<std::vector<int>> seen;
    for_each_list_homomorphism(g.graph, g.lists, h, [&](std::span<const int> f) {
        std::vector<int> t;
        for (int v : g.interface)
            t.push_back(f[v]);
        seen.insert(std::move(t));
        return true;
    });
    return {seen.begin(), seen.end()};
}

namespace {

void check_interface(const Gadget& g, std::size_t arity)
{
    if (g.interface.size() != arity)
        throw PreconditionError("gadget interface has wrong arity");
    for (int v : g.interface)
        if (v < 0 || v >= g.graph.num_vertices())
            throw PreconditionError("gadget interface vertex out of range");
    std::vector<int> sorted = g.interface;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw PreconditionError("gadget interface vertices must be distinct");
    if (g.lists.size() != static_cast<std::size_t>(g.graph.num_vertices()))
        throw PreconditionError("gadget needs one list per vertex");
}

}

bool verify_or3_gadget(const Gadget& g, const TargetGraph& h, int a, int b)
{
    check_interface(g, 3);
    ColorSet ab = color_bit(a) | color_bit(b);
    if (a == b)
        throw PreconditionError("OR3 gadget needs a != b");
    for (int v : g.interface)
        if (g.lists[v] != ab)
            throw PreconditionError("OR3 interface lists must equal {a,b}");
    std::vector<std::vector<int>> expected;
    for (int i : {a, b})
        for (int j : {a, b})
            for (int k : {a, b})
                if (! (i == b && j == b && k == b))
                    expected.push_back({i, j, k});
    std::sort(expected.begin(), expected.end());
    return interface_projection(g, h) == expected;
}

bool verify_switch_gadget(const Gadget& g, const TargetGraph& h, int a, int b, int c, int d)
{
    check_interface(g, 2);
    if (a == b || c == d)
        throw PreconditionError("switch gadget needs a != b and c != d");
    if (g.lists[g.interface[0]] != (color_bit(a) | color_bit(b)) || g.lists[g.interface[1]] != (color_bit(c) | color_bit(d)))
        throw PreconditionError("switch interface lists must be {a,b} and {c,d}");
    std::vector<std::vector<int>> expected{{a, c}, {b, d}};
    std::sort(expected.begin(), expected.end());
    return interface_projection(g, h) == expected;
}

}
