#include "geohom/formats.hpp"

#include "geohom/errors.hpp"

#include <fstream>
#include <sstream>

namespace geohom {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text)
{
    std::vector<Line> out;
    std::istringstream in{std::string(text)};
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        std::istringstream ls(raw);
        Line line{number, {}};
        std::string tok;
        while (ls >> tok)
            line.tokens.push_back(tok);
        if (line.tokens.empty() || line.tokens[0][0] == '#')
            continue;
        out.push_back(std::move(line));
    }
    return out;
}

[[noreturn]] void fail(const Line& l, const std::string& what)
{
    throw ParseError("line " + std::to_string(l.number) + ": " + what);
}

long parse_int(const Line& l, const std::string& tok)
{
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(tok, &used);
    }
    catch (const std::exception&) {
        fail(l, "expected an integer, got '" + tok + "'");
    }
    if (used != tok.size())
        fail(l, "expected an integer, got '" + tok + "'");
    return v;
}

int parse_index(const Line& l, const std::string& tok, int n)
{
    long v = parse_int(l, tok);
    if (v < 0 || v >= n)
        fail(l, "vertex index " + tok + " out of range");
    return static_cast<int>(v);
}

Rational parse_number(const Line& l, const std::string& tok)
{
    try {
        return parse_rational(tok);
    }
    catch (const ParseError& e) {
        fail(l, e.what());
    }
}

int parse_color(const Line& l, const std::string& tok, const TargetGraph& h)
{
    auto c = h.find(tok);
    if (! c)
        fail(l, "unknown color '" + tok + "'");
    return *c;
}

void expect_size(const Line& l, std::size_t n)
{
    if (l.tokens.size() != n)
        fail(l, "'" + l.tokens[0] + "' takes " + std::to_string(n - 1) + " fields");
}

int parse_header(const std::vector<Line>& lines, const char* tag)
{
    if (lines.empty())
        throw ParseError(std::string("missing '") + tag + "' header");
    const Line& l = lines[0];
    if (l.tokens[0] != tag)
        fail(l, std::string("expected '") + tag + "' header");
    expect_size(l, 2);
    long n = parse_int(l, l.tokens[1]);
    if (n < 0)
        fail(l, "negative size");
    return static_cast<int>(n);
}

std::string fmt(const Rational& q) { return format_rational(q); }

void put_point(std::ostringstream& out, const Point& p) { out << ' ' << fmt(p.x) << ' ' << fmt(p.y); }

}

TargetGraph parse_target(std::string_view text)
{
    auto lines = tokenize(text);
    int n = parse_header(lines, "H");
    if (n > max_target_vertices)
        fail(lines[0], "H has more than 32 vertices");
    std::vector<std::string> labels;
    std::size_t i = 1;
    for (; i < lines.size() && lines[i].tokens[0] == "v"; ++i) {
        expect_size(lines[i], 2);
        labels.push_back(lines[i].tokens[1]);
    }
    if (static_cast<int>(labels.size()) != n)
        throw ParseError("header declares " + std::to_string(n) + " vertices, found " + std::to_string(labels.size()));
    TargetGraph h;
    try {
        h = TargetGraph(labels);
    }
    catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
    for (; i < lines.size(); ++i) {
        const Line& l = lines[i];
        if (l.tokens[0] != "e")
            fail(l, "unexpected '" + l.tokens[0] + "'");
        expect_size(l, 3);
        h.add_edge(parse_color(l, l.tokens[1], h), parse_color(l, l.tokens[2], h));
    }
    return h;
}

std::string format_target(const TargetGraph& h)
{
    std::ostringstream out;
    out << "H " << h.size() << '\n';
    for (const auto& l : h.labels())
        out << "v " << l << '\n';
    for (int a = 0; a < h.size(); ++a)
        for (int b = a; b < h.size(); ++b)
            if (h.adjacent(a, b))
                out << "e " << h.label(a) << ' ' << h.label(b) << '\n';
    return out.str();
}

Scene parse_scene(std::string_view text)
{
    Scene s;
    for (const auto& l : tokenize(text)) {
        const auto& t = l.tokens;
        std::size_t pos = 1;
        auto num = [&]() {
            if (pos >= t.size())
                fail(l, "too few fields");
            return parse_number(l, t[pos++]);
        };
        auto point = [&]() {
            Rational x = num();
            return Point{x, num()};
        };
        auto count = [&](long minimum) {
            if (pos >= t.size())
                fail(l, "too few fields");
            long k = parse_int(l, t[pos++]);
            if (k < minimum)
                fail(l, "too few points");
            return k;
        };
        GeoObject o;
        const std::string& kind = t[0];
        if (kind == "disk") {
            Point c = point();
            o.shape = Disk{c, num()};
        }
        else if (kind == "seg") {
            Point p = point();
            o.shape = Segment{p, point()};
        }
        else if (kind == "tri") {
            Point a = point(), b = point();
            o.shape = Triangle{a, b, point()};
        }
        else if (kind == "poly" || kind == "pline") {
            long k = count(kind == "poly" ? 3 : 2);
            std::vector<Point> pts;
            for (long i = 0; i < k; ++i)
                pts.push_back(point());
            if (kind == "poly")
                o.shape = ConvexPolygon{std::move(pts)};
            else
                o.shape = Polyline{std::move(pts)};
        }
        else
            fail(l, "unknown object kind '" + kind + "'");
        if (pos < t.size()) {
            if (t[pos] != "anchor")
                fail(l, "unexpected '" + t[pos] + "'");
            ++pos;
            o.anchor = point();
            if (pos != t.size())
                fail(l, "trailing fields");
        }
        try {
            check_well_formed(o);
        }
        catch (const PreconditionError& e) {
            fail(l, e.what());
        }
        s.objects.push_back(std::move(o));
    }
    return s;
}

std::string format_scene(const Scene& s)
{
    std::ostringstream out;
    for (const auto& o : s.objects) {
        std::visit(
            [&](const auto& sh) {
                using T = std::decay_t<decltype(sh)>;
                if constexpr (std::is_same_v<T, Disk>) {
                    out << "disk";
                    put_point(out, sh.center);
                    out << ' ' << fmt(sh.radius);
                }
                else if constexpr (std::is_same_v<T, Segment>) {
                    out << "seg";
                    put_point(out, sh.p);
                    put_point(out, sh.q);
                }
                else if constexpr (std::is_same_v<T, Triangle>) {
                    out << "tri";
                    put_point(out, sh.a);
                    put_point(out, sh.b);
                    put_point(out, sh.c);
                }
                else if constexpr (std::is_same_v<T, ConvexPolygon>) {
                    out << "poly " << sh.vertices.size();
                    for (const auto& p : sh.vertices)
                        put_point(out, p);
                }
                else {
                    out << "pline " << sh.points.size();
                    for (const auto& p : sh.points)
                        put_point(out, p);
                }
            },
            o.shape);
        if (o.anchor) {
            out << " anchor";
            put_point(out, *o.anchor);
        }
        out << '\n';
    }
    return out.str();
}

InstanceFile parse_instance(std::string_view text, const TargetGraph& h)
{
    auto lines = tokenize(text);
    int n = parse_header(lines, "G");
    InstanceFile f;
    f.graph = Graph(n);
    f.lists.assign(n, h.all());
    f.has_list.assign(n, false);
    auto costs = [&]() -> CostTables& {
        if (! f.costs)
            f.costs = zero_costs(n, h.size());
        return *f.costs;
    };
    bool budget_seen = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        const auto& t = l.tokens;
        if (t[0] == "e") {
            expect_size(l, 3);
            int u = parse_index(l, t[1], n), v = parse_index(l, t[2], n);
            if (u == v)
                fail(l, "G has no loops");
            f.graph.add_edge(u, v);
        }
        else if (t[0] == "l") {
            if (t.size() < 2)
                fail(l, "'l' needs a vertex");
            int v = parse_index(l, t[1], n);
            if (f.has_list[v])
                fail(l, "second list for vertex " + t[1]);
            ColorSet s = 0;
            for (std::size_t k = 2; k < t.size(); ++k)
                s |= color_bit(parse_color(l, t[k], h));
            f.lists[v] = s;
            f.has_list[v] = true;
        }
        else if (t[0] == "wv") {
            expect_size(l, 4);
            int v = parse_index(l, t[1], n), c = parse_color(l, t[2], h);
            Rational q = parse_number(l, t[3]);
            if (q < 0)
                fail(l, "negative cost");
            costs().vcost[v][c] = q;
        }
        else if (t[0] == "we") {
            expect_size(l, 6);
            int u = parse_index(l, t[1], n), v = parse_index(l, t[2], n);
            int c = parse_color(l, t[3], h), d = parse_color(l, t[4], h);
            Rational q = parse_number(l, t[5]);
            if (q < 0)
                fail(l, "negative cost");
            if (u == v)
                fail(l, "edge cost on a loop");
            costs().set_edge_cost(u, v, c, d, q, h.size());
        }
        else if (t[0] == "budget") {
            expect_size(l, 2);
            if (budget_seen)
                fail(l, "second budget line");
            budget_seen = true;
            costs().budget = parse_number(l, t[1]);
        }
        else if (t[0] == "scene") {
            expect_size(l, 2);
            if (f.scene_path)
                fail(l, "second scene line");
            f.scene_path = t[1];
        }
        else
            fail(l, "unexpected '" + t[0] + "'");
    }
    if (f.costs && f.costs->ecost)
        for (const auto& [e, m] : *f.costs->ecost)
            if (! f.graph.has_edge(e.first, e.second))
                throw ParseError("edge cost on " + std::to_string(e.first) + "-" + std::to_string(e.second) + ", which is not an edge");
    return f;
}

std::string format_instance(const InstanceFile& f, const TargetGraph& h)
{
    std::ostringstream out;
    int n = f.graph.num_vertices();
    out << "G " << n << '\n';
    if (f.scene_path)
        out << "scene " << *f.scene_path << '\n';
    for (auto [u, v] : f.graph.edges())
        out << "e " << u << ' ' << v << '\n';
    for (int v = 0; v < n; ++v)
        if (f.has_list[v]) {
            out << "l " << v;
            for_each_color(f.lists[v], [&](int c) { out << ' ' << h.label(c); });
            out << '\n';
        }
    if (f.costs) {
        const auto& c = *f.costs;
        for (int v = 0; v < n; ++v)
            for (int a = 0; a < h.size(); ++a)
                if (c.vcost[v][a] != 0)
                    out << "wv " << v << ' ' << h.label(a) << ' ' << fmt(c.vcost[v][a]) << '\n';
        if (c.ecost)
            for (const auto& [e, m] : *c.ecost)
                for (int a = 0; a < h.size(); ++a)
                    for (int b = a; b < h.size(); ++b)
                        if (m[a * h.size() + b] != 0)
                            out << "we " << e.first << ' ' << e.second << ' ' << h.label(a) << ' ' << h.label(b) << ' '
                                << fmt(m[a * h.size() + b]) << '\n';
        out << "budget " << fmt(c.budget) << '\n';
    }
    return out.str();
}

InstanceFile instance_file(const ListInstance& inst)
{
    InstanceFile f;
    f.graph = inst.graph;
    f.lists = inst.lists;
    f.has_list.assign(inst.size(), false);
    for (int v = 0; v < inst.size(); ++v)
        f.has_list[v] = inst.lists[v] != inst.h().all();
    return f;
}

ListInstance to_list_instance(const InstanceFile& f, std::shared_ptr<const TargetGraph> h)
{
    return make_instance(std::move(h), f.graph, f.lists);
}

Graph parse_graph(std::string_view text)
{
    auto lines = tokenize(text);
    int n = parse_header(lines, "G");
    Graph g(n);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        if (l.tokens[0] != "e")
            fail(l, "unexpected '" + l.tokens[0] + "'");
        expect_size(l, 3);
        int u = parse_index(l, l.tokens[1], n), v = parse_index(l, l.tokens[2], n);
        if (u == v)
            fail(l, "G has no loops");
        g.add_edge(u, v);
    }
    return g;
}

std::string format_graph(const Graph& g)
{
    std::ostringstream out;
    out << "G " << g.num_vertices() << '\n';
    for (auto [u, v] : g.edges())
        out << "e " << u << ' ' << v << '\n';
    return out.str();
}

std::string format_dimacs(const CnfFormula& f)
{
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses)
        out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
    return out.str();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary);
    if (! out)
        throw Error("cannot write '" + path + "'");
    out << content;
    if (! out)
        throw Error("write to '" + path + "' failed");
}

}
