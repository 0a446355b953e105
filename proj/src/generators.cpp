#include "geohom/generators.hpp"

#include "geohom/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>

namespace geohom {

CnfFormula parse_dimacs(std::string_view text)
{
    CnfFormula f;
    std::istringstream in{std::string(text)};
    std::string line;
    bool header = false;
    long declared = 0;
    std::vector<int> current;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (! (ls >> tok) || tok[0] == 'c')
            continue;
        if (tok == "%")
            break;
        auto fail = [&](const std::string& what) { throw ParseError("dimacs line " + std::to_string(lineno) + ": " + what); };
        if (tok == "p") {
            std::string fmt;
            long nv = -1, nc = -1;
            if (header || ! (ls >> fmt >> nv >> nc) || fmt != "cnf" || nv < 0 || nc < 0 || (ls >> tok))
                fail("malformed header");
            header = true;
            f.num_vars = static_cast<int>(nv);
            declared = nc;
            continue;
        }
        if (! header)
            fail("clause before header");
        do {
            std::size_t used = 0;
            long lit = 0;
            try {
                lit = std::stol(tok, &used);
            }
            catch (const std::exception&) {
                fail("malformed literal '" + tok + "'");
            }
            if (used != tok.size())
                fail("malformed literal '" + tok + "'");
            if (lit == 0) {
                if (current.empty())
                    fail("empty clause");
                if (current.size() > 3)
                    fail("clause has more than three literals");
                std::array<int, 3> c{};
                for (std::size_t i = 0; i < 3; ++i)
                    c[i] = current[std::min(i, current.size() - 1)];
                f.clauses.push_back(c);
                current.clear();
            }
            else {
                if (lit > f.num_vars || -lit > f.num_vars)
                    fail("literal out of range");
                current.push_back(static_cast<int>(lit));
            }
        } while (ls >> tok);
    }
    if (! header)
        throw ParseError("dimacs: missing header");
    if (! current.empty())
        throw ParseError("dimacs: clause not terminated by 0");
    if (static_cast<long>(f.clauses.size()) != declared)
        throw ParseError("dimacs: header declares " + std::to_string(declared) + " clauses, found " + std::to_string(f.clauses.size()));
    return f;
}

TargetGraph target_h5()
{
    TargetGraph h({"1", "2", "3", "4", "5"});
    for (int a = 0; a < 5; ++a)
        h.add_edge(a, (a + 1) % 5);
    h.add_edge(0, 0);
    h.add_edge(1, 1);
    return h;
}

namespace {

// sqrt(3) to within 4e-7; triangles are equilateral up to that error.
const Rational& root3()
{
    static const Rational r(1351, 780);
    return r;
}

Rational half_height() { return root3() / 2; }

// Apex at the bottom, base above.
Triangle tri_down(const Rational& px, const Rational& py, const Rational& s)
{
    Rational hs = s * half_height();
    return {{px, py}, {px + s / 2, py + hs}, {px - s / 2, py + hs}};
}

// Apex at the top, base below.
Triangle tri_up(const Rational& px, const Rational& py, const Rational& s)
{
    Rational hs = s * half_height();
    return {{px, py}, {px - s / 2, py - hs}, {px + s / 2, py - hs}};
}

// Final placement: everything is scaled by 4 so the smallest triangles
// contain a unit anchor disk, and anchored at the centroid.
GeoObject place(const Triangle& t)
{
    Triangle s{{t.a.x * 4, t.a.y * 4}, {t.b.x * 4, t.b.y * 4}, {t.c.x * 4, t.c.y * 4}};
    Point c{(s.a.x + s.b.x + s.c.x) / 3, (s.a.y + s.b.y + s.c.y) / 3};
    return GeoObject{s, c};
}

// Variable gadget, order x a b c d e y; x and y take opposite colors in {3,5}.
struct VariablePart {
    Rational px, py, s;
    const char* list[2];
};
const VariablePart variable_parts[7] = {
    {0, 0, 1, {"3", "5"}},
    {0, Rational(3, 4), 1, {"1", "2"}},
    {0, Rational(31, 20), Rational(3, 2), {"1", "5"}},
    {1, Rational(17, 10), Rational(3, 2), {"1", "4"}},
    {Rational(9, 10), Rational(3, 4), 1, {"1", "3"}},
    {Rational(9, 5), Rational(3, 4), 1, {"2", "4"}},
    {Rational(14, 5), 0, 3, {"3", "5"}},
};
const std::pair<int, int> variable_edges[7] = {{0, 1}, {1, 2}, {2, 3}, {3, 6}, {1, 4}, {4, 5}, {5, 6}};

std::vector<Triangle> variable_triangles(const Rational& ox, const Rational& oy)
{
    std::vector<Triangle> out;
    for (const auto& p : variable_parts)
        out.push_back(tri_down(ox + p.px, oy + p.py, p.s));
    return out;
}

// Clause gadget, order z0 z1 z2, then three-triangle paths from each z_k
// toward the center c, then c. Completes iff some z_k is 3.
const char* const path_lists[3][3][2] = {
    {{"1", "2"}, {"1", "3"}, {"1", "4"}},
    {{"1", "2"}, {"1", "3"}, {"2", "4"}},
    {{"1", "2"}, {"3", "5"}, {"2", "4"}},
};
constexpr int clause_size = 13;
constexpr int clause_center = 12;
int path_vertex(int k, int t) { return 3 + 3 * k + t; }

std::vector<Triangle> clause_triangles(const Rational& ox, const Rational& oy)
{
    std::vector<Triangle> out;
    for (int k = 0; k < 3; ++k)
        out.push_back(tri_up(ox + 2 * k, oy, 1));
    for (int k = 0; k < 3; ++k)
        for (int t = 0; t < 3; ++t)
            out.push_back(tri_up(ox + 2 * k, oy - Rational(3 * (t + 1), 4), 1));
    Rational top = oy - Rational(61, 20);
    out.push_back({{ox - 1, top}, {ox + 2, top - 6 * half_height()}, {ox + 5, top}});
    return out;
}

std::vector<std::pair<int, int>> clause_edges()
{
    std::vector<std::pair<int, int>> e;
    for (int k = 0; k < 3; ++k) {
        e.emplace_back(k, path_vertex(k, 0));
        e.emplace_back(path_vertex(k, 0), path_vertex(k, 1));
        e.emplace_back(path_vertex(k, 1), path_vertex(k, 2));
        e.emplace_back(path_vertex(k, 2), clause_center);
    }
    return e;
}

std::vector<std::vector<std::string>> clause_lists()
{
    std::vector<std::vector<std::string>> l(clause_size);
    for (int k = 0; k < 3; ++k) {
        l[k] = {"3", "5"};
        for (int t = 0; t < 3; ++t)
            l[path_vertex(k, t)] = {path_lists[k][t][0], path_lists[k][t][1]};
    }
    l[clause_center] = {"1", "3", "5"};
    return l;
}

// Near-equilateral triangle with two corners at a and b, third to the right
// of the direction a -> b.
Triangle connector(const Point& a, const Point& b)
{
    Rational dx = b.x - a.x, dy = b.y - a.y;
    Point c{(a.x + b.x) / 2 - half_height() * dy, (a.y + b.y) / 2 + half_height() * dx};
    return {a, b, c};
}

GadgetTemplate make_template(std::string name, const std::vector<Triangle>& tris, std::vector<std::vector<std::string>> lists,
    std::vector<int> interface, Contract contract)
{
    GadgetTemplate t;
    t.name = std::move(name);
    for (const auto& tr : tris)
        t.fragment.objects.push_back(place(tr));
    t.lists = std::move(lists);
    t.interface = std::move(interface);
    t.contract = contract;
    return t;
}

}

GadgetTemplate variable_template()
{
    std::vector<std::vector<std::string>> lists;
    for (const auto& p : variable_parts)
        lists.push_back({p.list[0], p.list[1]});
    return make_template("variable", variable_triangles(0, 0), std::move(lists), {0, 6}, Contract::variable);
}

GadgetTemplate clause_template()
{
    return make_template("clause", clause_triangles(0, 0), clause_lists(), {0, 1, 2}, Contract::clause);
}

GadgetTemplate connector_template()
{
    Triangle u = tri_down(0, 0, 1), w = tri_up(3, -8, 1);
    return make_template("connector", {u, connector(u.a, w.a), w}, {{"3", "5"}, {"1", "2"}, {"3", "5"}}, {0, 2}, Contract::connector);
}

bool verify_gadget_contract(const GadgetTemplate& t, const TargetGraph& h)
{
    int n = static_cast<int>(t.fragment.size());
    if (n > 16)
        throw PreconditionError("gadget fragment has more than 16 vertices");
    if (t.lists.size() != static_cast<std::size_t>(n))
        throw PreconditionError("gadget needs one list per triangle");
    Gadget g;
    g.graph = intersection_graph(t.fragment);
    for (const auto& labels : t.lists) {
        ColorSet s = 0;
        for (const auto& l : labels)
            s |= color_bit(h.index_of(l));
        g.lists.push_back(s);
    }
    g.interface = t.interface;
    for (int v : g.interface)
        if (v < 0 || v >= n)
            throw PreconditionError("gadget interface vertex out of range");

    auto c = [&](const char* l) { return h.index_of(l); };
    auto projection = interface_projection(g, h);
    std::set<std::vector<int>> got(projection.begin(), projection.end()), expected;
    switch (t.contract) {
    case Contract::variable:
        if (g.interface.size() != 2)
            return false;
        expected = {{c("5"), c("3")}, {c("3"), c("5")}};
        return got == expected;
    case Contract::clause:
        if (g.interface.size() != 3)
            return false;
        for (int a : {c("3"), c("5")})
            for (int b : {c("3"), c("5")})
                for (int d : {c("3"), c("5")})
                    if (a == c("3") || b == c("3") || d == c("3"))
                        expected.insert({a, b, d});
        return got == expected;
    case Contract::connector:
        if (g.interface.size() != 2)
            return false;
        expected = {{c("3"), c("3")}, {c("5"), c("5")}};
        return got == expected;
    case Contract::mchom_vertex: {
        if (g.interface.size() != 2)
            return false;
        int total = 0;
        for_each_list_homomorphism(g.graph, g.lists, h, [&](std::span<const int>) {
            ++total;
            return total <= 2;
        });
        expected = {{c("1"), c("4")}, {c("2"), c("3")}};
        return total == 2 && got == expected;
    }
    }
    return false;
}

GeneratedInstance gen_convexfat_3sat(const CnfFormula& f)
{
    auto h = std::make_shared<const TargetGraph>(target_h5());
    int nv = f.num_vars, nc = static_cast<int>(f.clauses.size());
    int total = 7 * nv + 16 * nc;
    auto label_set = [&](std::initializer_list<const char*> ls) {
        ColorSet s = 0;
        for (const char* l : ls)
            s |= color_bit(h->index_of(l));
        return s;
    };

    std::vector<Triangle> tris;
    std::vector<ColorSet> lists;
    Graph g(total);
    for (int i = 0; i < nv; ++i) {
        auto t = variable_triangles(6 * i, 0);
        tris.insert(tris.end(), t.begin(), t.end());
        for (const auto& p : variable_parts)
            lists.push_back(label_set({p.list[0], p.list[1]}));
        for (auto [u, v] : variable_edges)
            g.add_edge(7 * i + u, 7 * i + v);
    }
    Rational depth = 64 * (nv + nc);
    auto cl = clause_lists();
    int clause_base = 7 * nv;
    for (int j = 0; j < nc; ++j) {
        auto t = clause_triangles(8 * j, -depth);
        tris.insert(tris.end(), t.begin(), t.end());
        for (const auto& l : cl) {
            ColorSet s = 0;
            for (const auto& x : l)
                s |= color_bit(h->index_of(x));
            lists.push_back(s);
        }
        for (auto [u, v] : clause_edges())
            g.add_edge(clause_base + clause_size * j + u, clause_base + clause_size * j + v);
    }
    int connector_base = clause_base + clause_size * nc;
    for (int j = 0; j < nc; ++j)
        for (int k = 0; k < 3; ++k) {
            int lit = f.clauses[j][k];
            int var = std::abs(lit) - 1;
            if (var < 0 || var >= nv)
                throw PreconditionError("literal out of range");
            int end = 7 * var + (lit > 0 ? 0 : 6);
            int z = clause_base + clause_size * j + k;
            int q = connector_base + 3 * j + k;
            tris.push_back(connector(tris[end].a, tris[z].a));
            lists.push_back(label_set({"1", "2"}));
            g.add_edge(q, end);
            g.add_edge(q, z);
        }

    GeneratedInstance out;
    for (const auto& t : tris)
        out.scene.objects.push_back(place(t));
    // Connectors sharing a literal end meet each other; q lists {1,2} make
    // those edges harmless, so they are taken from the geometry.
    for (int a = connector_base; a < total; ++a)
        for (int b = a + 1; b < total; ++b)
            if (intersects(out.scene.objects[a], out.scene.objects[b]))
                g.add_edge(a, b);
    out.instance = make_instance(h, std::move(g), std::move(lists));
    return out;
}

std::vector<bool> decode_assignment(const CnfFormula& f, const Assignment& witness)
{
    auto h = target_h5();
    int three = h.index_of("3");
    std::vector<bool> value(f.num_vars + 1, false);
    for (int v = 1; v <= f.num_vars; ++v)
        value[v] = witness.at(7 * (v - 1)) == three;
    return value;
}

AuditReport geometry_audit(const Scene& scene, const Graph& declared)
{
    AuditReport r;
    if (static_cast<int>(scene.size()) != declared.num_vertices())
        throw PreconditionError("scene and graph sizes differ");
    auto actual = intersection_graph(scene);
    auto de = declared.edges(), ae = actual.edges();
    std::set_difference(de.begin(), de.end(), ae.begin(), ae.end(), std::back_inserter(r.missing));
    std::set_difference(ae.begin(), ae.end(), de.begin(), de.end(), std::back_inserter(r.extra));
    return r;
}

double equilateral_defect(const Triangle& t)
{
    auto sq = [](const Point& p, const Point& q) { return to_double((p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y)); };
    double s[3] = {sq(t.a, t.b), sq(t.b, t.c), sq(t.c, t.a)};
    return *std::max_element(s, s + 3) / *std::min_element(s, s + 3) - 1;
}

}
