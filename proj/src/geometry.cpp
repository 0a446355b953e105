#include "geohom/geometry.hpp"

#include "geohom/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <type_traits>

namespace geohom {

namespace {

Rational cross(const Point& o, const Point& a, const Point& b)
{
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int orient(const Point& o, const Point& a, const Point& b)
{
    return cross(o, a, b).sign();
}

Rational dist2(const Point& a, const Point& b)
{
    Rational dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// p is known to be collinear with ab.
bool within_box(const Point& p, const Point& a, const Point& b)
{
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_meet(const Point& a, const Point& b, const Point& c, const Point& d)
{
    int d1 = orient(c, d, a), d2 = orient(c, d, b), d3 = orient(a, b, c), d4 = orient(a, b, d);
    if (d1 * d2 < 0 && d3 * d4 < 0)
        return true;
    return (d1 == 0 && within_box(a, c, d)) || (d2 == 0 && within_box(b, c, d)) || (d3 == 0 && within_box(c, a, b))
        || (d4 == 0 && within_box(d, a, b));
}

Rational dist2_point_segment(const Point& p, const Point& a, const Point& b)
{
    Rational ux = b.x - a.x, uy = b.y - a.y;
    Rational len2 = ux * ux + uy * uy;
    if (len2 == 0)
        return dist2(p, a);
    Rational t = ((p.x - a.x) * ux + (p.y - a.y) * uy) / len2;
    if (t < 0)
        t = 0;
    else if (t > 1)
        t = 1;
    return dist2(p, Point{a.x + t * ux, a.y + t * uy});
}

// Closed containment in a CCW convex polygon.
bool inside_convex(const Point& p, const std::vector<Point>& poly)
{
    for (std::size_t i = 0; i < poly.size(); ++i)
        if (orient(poly[i], poly[(i + 1) % poly.size()], p) < 0)
            return false;
    return true;
}

struct Prim {
    enum Kind { disk, segment, polygon } kind;
    Disk d;
    Point p, q;
    std::vector<Point> poly;
};

std::vector<Point> ccw_triangle(const Triangle& t)
{
    if (orient(t.a, t.b, t.c) > 0)
        return {t.a, t.b, t.c};
    return {t.a, t.c, t.b};
}

std::vector<Prim> decompose(const GeoObject& o)
{
    std::vector<Prim> out;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disk>)
                out.push_back(Prim{Prim::disk, s, {}, {}, {}});
            else if constexpr (std::is_same_v<T, Segment>)
                out.push_back(Prim{Prim::segment, {}, s.p, s.q, {}});
            else if constexpr (std::is_same_v<T, Triangle>)
                out.push_back(Prim{Prim::polygon, {}, {}, {}, ccw_triangle(s)});
            else if constexpr (std::is_same_v<T, ConvexPolygon>)
                out.push_back(Prim{Prim::polygon, {}, {}, {}, s.vertices});
            else
                for (std::size_t i = 0; i + 1 < s.points.size(); ++i)
                    out.push_back(Prim{Prim::segment, {}, s.points[i], s.points[i + 1], {}});
        },
        o.shape);
    return out;
}

bool disk_polygon(const Disk& d, const std::vector<Point>& poly)
{
    if (inside_convex(d.center, poly))
        return true;
    Rational r2 = d.radius * d.radius;
    for (std::size_t i = 0; i < poly.size(); ++i)
        if (dist2_point_segment(d.center, poly[i], poly[(i + 1) % poly.size()]) <= r2)
            return true;
    return false;
}

bool segment_polygon(const Point& p, const Point& q, const std::vector<Point>& poly)
{
    if (inside_convex(p, poly) || inside_convex(q, poly))
        return true;
    for (std::size_t i = 0; i < poly.size(); ++i)
        if (segments_meet(p, q, poly[i], poly[(i + 1) % poly.size()]))
            return true;
    return false;
}

bool separated_along_edges(const std::vector<Point>& a, const std::vector<Point>& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Point& p = a[i];
        const Point& q = a[(i + 1) % a.size()];
        Rational nx = p.y - q.y, ny = q.x - p.x;
        auto project = [&](const std::vector<Point>& poly, Rational& lo, Rational& hi) {
            lo = hi = nx * poly[0].x + ny * poly[0].y;
            for (const auto& v : poly) {
                Rational t = nx * v.x + ny * v.y;
                if (t < lo)
                    lo = t;
                if (t > hi)
                    hi = t;
            }
        };
        Rational alo, ahi, blo, bhi;
        project(a, alo, ahi);
        project(b, blo, bhi);
        if (ahi < blo || bhi < alo)
            return true;
    }
    return false;
}

bool prims_meet(const Prim& a, const Prim& b)
{
    if (a.kind > b.kind)
        return prims_meet(b, a);
    switch (a.kind) {
    case Prim::disk:
        switch (b.kind) {
        case Prim::disk: {
            Rational s = a.d.radius + b.d.radius;
            return dist2(a.d.center, b.d.center) <= s * s;
        }
        case Prim::segment:
            return dist2_point_segment(a.d.center, b.p, b.q) <= a.d.radius * a.d.radius;
        case Prim::polygon:
            return disk_polygon(a.d, b.poly);
        }
        break;
    case Prim::segment:
        if (b.kind == Prim::segment)
            return segments_meet(a.p, a.q, b.p, b.q);
        return segment_polygon(a.p, a.q, b.poly);
    case Prim::polygon:
        return ! separated_along_edges(a.poly, b.poly) && ! separated_along_edges(b.poly, a.poly);
    }
    return false;
}

bool overlaps(const Extent& a, const Extent& b)
{
    return a.xmin <= b.xmax && b.xmin <= a.xmax && a.ymin <= b.ymax && b.ymin <= a.ymax;
}

}

void check_well_formed(const GeoObject& o)
{
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disk>) {
                if (s.radius <= 0)
                    throw PreconditionError("disk radius must be positive");
            }
            else if constexpr (std::is_same_v<T, Triangle>) {
                if (orient(s.a, s.b, s.c) == 0)
                    throw PreconditionError("triangle vertices are collinear");
            }
            else if constexpr (std::is_same_v<T, ConvexPolygon>) {
                const auto& v = s.vertices;
                if (v.size() < 3)
                    throw PreconditionError("polygon needs at least 3 vertices");
                for (std::size_t i = 0; i < v.size(); ++i)
                    if (orient(v[i], v[(i + 1) % v.size()], v[(i + 2) % v.size()]) <= 0)
                        throw PreconditionError("polygon is not strictly convex and counter-clockwise");
                // Strict left turns everywhere still allow winding twice.
                for (std::size_t i = 1; i + 1 < v.size(); ++i)
                    if (orient(v[0], v[i], v[i + 1]) <= 0)
                        throw PreconditionError("polygon is not simple");
            }
            else if constexpr (std::is_same_v<T, Polyline>) {
                if (s.points.size() < 2)
                    throw PreconditionError("polyline needs at least 2 points");
            }
        },
        o.shape);
}

bool intersects(const GeoObject& o1, const GeoObject& o2)
{
    auto p1 = decompose(o1), p2 = decompose(o2);
    for (const auto& a : p1)
        for (const auto& b : p2)
            if (prims_meet(a, b))
                return true;
    return false;
}

Extent extent(const GeoObject& o)
{
    if (const auto* d = std::get_if<Disk>(&o.shape))
        return {d->center.x - d->radius, d->center.x + d->radius, d->center.y - d->radius, d->center.y + d->radius};
    auto pts = shape_vertices(o);
    Extent e{pts[0].x, pts[0].x, pts[0].y, pts[0].y};
    for (const auto& p : pts) {
        e.xmin = std::min(e.xmin, p.x);
        e.xmax = std::max(e.xmax, p.x);
        e.ymin = std::min(e.ymin, p.y);
        e.ymax = std::max(e.ymax, p.y);
    }
    return e;
}

Graph intersection_graph_naive(const Scene& s)
{
    int n = static_cast<int>(s.size());
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (intersects(s.objects[i], s.objects[j]))
                g.add_edge(i, j);
    return g;
}

Graph intersection_graph(const Scene& s)
{
    int n = static_cast<int>(s.size());
    std::vector<Extent> ext;
    ext.reserve(n);
    for (const auto& o : s.objects)
        ext.push_back(extent(o));
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (ext[a].xmin != ext[b].xmin)
            return ext[a].xmin < ext[b].xmin;
        return a < b;
    });

    Graph g(n);
    std::vector<int> active;
    for (int i : order) {
        std::erase_if(active, [&](int j) { return ext[j].xmax < ext[i].xmin; });
        for (int j : active)
            if (overlaps(ext[i], ext[j]) && intersects(s.objects[i], s.objects[j]))
                g.add_edge(i, j);
        active.push_back(i);
    }
    return g;
}

GridRect grid_rect(const Extent& e)
{
    GridRect r;
    r.col_min = floor_to_int(e.xmin);
    r.col_max = std::max(r.col_min, ceil_to_int(e.xmax) - 1);
    r.row_min = floor_to_int(e.ymin);
    r.row_max = std::max(r.row_min, ceil_to_int(e.ymax) - 1);
    return r;
}

GridRect bounding_box(const Scene& s, std::span<const int> ids)
{
    if (ids.empty())
        throw PreconditionError("bounding box of an empty object set");
    Extent e = extent(s.objects[ids[0]]);
    for (int i : ids) {
        Extent f = extent(s.objects[i]);
        e.xmin = std::min(e.xmin, f.xmin);
        e.xmax = std::max(e.xmax, f.xmax);
        e.ymin = std::min(e.ymin, f.ymin);
        e.ymax = std::max(e.ymax, f.ymax);
    }
    return grid_rect(e);
}

GridRect bounding_box(const Scene& s)
{
    std::vector<int> ids(s.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
        ids[i] = static_cast<int>(i);
    return bounding_box(s, ids);
}

std::int64_t area(const Scene& s, std::span<const int> ids)
{
    return bounding_box(s, ids).area();
}

std::int64_t area(const Scene& s)
{
    return bounding_box(s).area();
}

std::vector<Point> shape_vertices(const GeoObject& o)
{
    return std::visit(
        [](const auto& s) -> std::vector<Point> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disk>)
                return {s.center};
            else if constexpr (std::is_same_v<T, Segment>)
                return {s.p, s.q};
            else if constexpr (std::is_same_v<T, Triangle>)
                return ccw_triangle(s);
            else if constexpr (std::is_same_v<T, ConvexPolygon>)
                return s.vertices;
            else
                return s.points;
        },
        o.shape);
}

bool contains_anchor_disk(const GeoObject& o)
{
    if (! o.anchor)
        return false;
    const Point& a = *o.anchor;
    const Rational half(1, 2);
    if (const auto* d = std::get_if<Disk>(&o.shape)) {
        // |a - c| + sqrt(1/2) <= r, squared twice.
        Rational r2 = d->radius * d->radius;
        Rational x = r2 + half - dist2(a, d->center);
        return r2 >= half && x >= 0 && x * x >= 2 * r2;
    }
    if (std::holds_alternative<Segment>(o.shape) || std::holds_alternative<Polyline>(o.shape))
        return false;
    auto poly = shape_vertices(o);
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % poly.size()];
        Rational c = cross(p, q, a);
        if (c < 0 || c * c < half * dist2(p, q))
            return false;
    }
    return true;
}

namespace {

bool covered_by(const GeoObject& o, const Rational& r_max)
{
    const Point& a = *o.anchor;
    if (const auto* d = std::get_if<Disk>(&o.shape)) {
        if (r_max < d->radius)
            return false;
        Rational slack = r_max - d->radius;
        return dist2(a, d->center) <= slack * slack;
    }
    Rational r2 = r_max * r_max;
    for (const auto& p : shape_vertices(o))
        if (dist2(a, p) > r2)
            return false;
    return true;
}

}

bool ValidationReport::ok() const
{
    return std::all_of(objects.begin(), objects.end(), [](const ObjectCheck& c) { return c.ok(); });
}

ValidationReport validate_fat_similarly_sized(const Scene& s, const Rational& r_max)
{
    ValidationReport rep;
    for (const auto& o : s.objects) {
        ObjectCheck c;
        c.anchored = o.anchor.has_value();
        if (c.anchored) {
            c.inscribed = contains_anchor_disk(o);
            c.covered = covered_by(o, r_max);
        }
        rep.objects.push_back(c);
    }
    return rep;
}

std::int64_t anchor_column(const GeoObject& o)
{
    if (! o.anchor)
        throw PreconditionError("object has no anchor");
    return floor_to_int(o.anchor->x);
}

std::int64_t anchor_row(const GeoObject& o)
{
    if (! o.anchor)
        throw PreconditionError("object has no anchor");
    return floor_to_int(o.anchor->y);
}

std::vector<std::vector<int>> cell_cliques(const Scene& s)
{
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<int>> cells;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& o = s.objects[i];
        if (! o.anchor)
            throw PreconditionError("cell_cliques: object " + std::to_string(i) + " has no anchor");
        cells[{anchor_column(o), anchor_row(o)}].push_back(static_cast<int>(i));
    }
    std::vector<std::vector<int>> out;
    for (auto& [cell, members] : cells)
        out.push_back(std::move(members));
    return out;
}

Scene subscene(const Scene& s, std::span<const int> ids)
{
    Scene out;
    out.objects.reserve(ids.size());
    for (int i : ids)
        out.objects.push_back(s.objects[i]);
    return out;
}

Rational diameter_squared(const GeoObject& o)
{
    if (const auto* d = std::get_if<Disk>(&o.shape))
        return 4 * d->radius * d->radius;
    auto pts = shape_vertices(o);
    Rational best = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, dist2(pts[i], pts[j]));
    return best;
}

namespace {

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s = buf;
    if (s == "-0.0000")
        s = "0.0000";
    return s;
}

const char* palette(int c)
{
    static const char* colors[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
    if (c < 0)
        return "#cccccc";
    return colors[c % 10];
}

std::string points_attr(const std::vector<Point>& pts)
{
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i)
            out += ' ';
        out += num(to_double(pts[i].x)) + "," + num(-to_double(pts[i].y));
    }
    return out;
}

}

std::string render_svg(const Scene& s, std::span<const SvgLabel> labels)
{
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    for (std::size_t i = 0; i < s.size(); ++i) {
        Extent e = extent(s.objects[i]);
        double a = to_double(e.xmin), b = to_double(e.xmax), c = to_double(e.ymin), d = to_double(e.ymax);
        if (i == 0) {
            x0 = a, x1 = b, y0 = c, y1 = d;
        }
        else {
            x0 = std::min(x0, a), x1 = std::max(x1, b), y0 = std::min(y0, c), y1 = std::max(y1, d);
        }
    }
    double margin = 0.05 * std::max({x1 - x0, y1 - y0, 1.0});
    double stroke = 0.004 * std::max({x1 - x0, y1 - y0, 1.0});

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + num(x0 - margin) + " " + num(-y1 - margin) + " "
        + num(x1 - x0 + 2 * margin) + " " + num(y1 - y0 + 2 * margin) + "\">\n";
    out += "<g stroke=\"#222222\" stroke-width=\"" + num(stroke) + "\" fill-opacity=\"0.45\">\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& o = s.objects[i];
        const SvgLabel* label = i < labels.size() ? &labels[i] : nullptr;
        std::string fill = palette(label ? label->color : -1);
        std::string title = label && ! label->text.empty() ? "<title>" + std::to_string(i) + ": " + label->text + "</title>"
                                                            : "<title>" + std::to_string(i) + "</title>";
        std::string id = " id=\"o" + std::to_string(i) + "\"";
        if (const auto* d = std::get_if<Disk>(&o.shape))
            out += "<circle" + id + " cx=\"" + num(to_double(d->center.x)) + "\" cy=\"" + num(-to_double(d->center.y)) + "\" r=\""
                + num(to_double(d->radius)) + "\" fill=\"" + fill + "\">" + title + "</circle>\n";
        else if (const auto* sg = std::get_if<Segment>(&o.shape))
            out += "<line" + id + " x1=\"" + num(to_double(sg->p.x)) + "\" y1=\"" + num(-to_double(sg->p.y)) + "\" x2=\""
                + num(to_double(sg->q.x)) + "\" y2=\"" + num(-to_double(sg->q.y)) + "\">" + title + "</line>\n";
        else if (std::holds_alternative<Polyline>(o.shape))
            out += "<polyline" + id + " points=\"" + points_attr(shape_vertices(o)) + "\" fill=\"none\">" + title + "</polyline>\n";
        else
            out += "<polygon" + id + " points=\"" + points_attr(shape_vertices(o)) + "\" fill=\"" + fill + "\">" + title + "</polygon>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

}
