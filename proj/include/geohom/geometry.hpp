#pragma once

#include "geohom/graph.hpp"
#include "geohom/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace geohom {

struct Point {
    Rational x, y;
    friend bool operator==(const Point&, const Point&) = default;
};

struct Disk {
    Point center;
    Rational radius;
    friend bool operator==(const Disk&, const Disk&) = default;
};
struct Segment {
    Point p, q;
    friend bool operator==(const Segment&, const Segment&) = default;
};
struct Triangle {
    Point a, b, c;
    friend bool operator==(const Triangle&, const Triangle&) = default;
};
// Counter-clockwise, strictly convex.
struct ConvexPolygon {
    std::vector<Point> vertices;
    friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;
};
struct Polyline {
    std::vector<Point> points;
    friend bool operator==(const Polyline&, const Polyline&) = default;
};

using Shape = std::variant<Disk, Segment, Triangle, ConvexPolygon, Polyline>;

struct GeoObject {
    Shape shape;
    std::optional<Point> anchor;
    friend bool operator==(const GeoObject&, const GeoObject&) = default;
};

struct Scene {
    std::vector<GeoObject> objects;
    std::size_t size() const { return objects.size(); }
    friend bool operator==(const Scene&, const Scene&) = default;
};

// Throws PreconditionError on a malformed shape.
void check_well_formed(const GeoObject& o);

// Closed-set intersection, exact.
bool intersects(const GeoObject& o1, const GeoObject& o2);

// Sweep over x-extents; identical output to the all-pairs loop.
Graph intersection_graph(const Scene& s);
Graph intersection_graph_naive(const Scene& s);

struct Extent {
    Rational xmin, xmax, ymin, ymax;
};
Extent extent(const GeoObject& o);

struct GridRect {
    std::int64_t col_min = 0, col_max = 0, row_min = 0, row_max = 0;
    std::int64_t columns() const { return col_max - col_min + 1; }
    std::int64_t rows() const { return row_max - row_min + 1; }
    std::int64_t area() const { return columns() * rows(); }
    friend bool operator==(const GridRect&, const GridRect&) = default;
};
GridRect grid_rect(const Extent& e);
GridRect bounding_box(const Scene& s, std::span<const int> ids);
GridRect bounding_box(const Scene& s);
std::int64_t area(const Scene& s, std::span<const int> ids);
std::int64_t area(const Scene& s);

struct ObjectCheck {
    bool anchored = false;
    bool inscribed = false;
    bool covered = false;
    bool ok() const { return anchored && inscribed && covered; }
};
struct ValidationReport {
    std::vector<ObjectCheck> objects;
    bool ok() const;
};
ValidationReport validate_fat_similarly_sized(const Scene& s, const Rational& r_max);

// Does the closed disk of radius sqrt(2)/2 about the anchor lie in the object?
bool contains_anchor_disk(const GeoObject& o);

std::int64_t anchor_column(const GeoObject& o);
std::int64_t anchor_row(const GeoObject& o);

// Parts ordered by (column, row) of the anchor cell; members ascending.
std::vector<std::vector<int>> cell_cliques(const Scene& s);

Scene subscene(const Scene& s, std::span<const int> ids);

// Squared diameter of the shape.
Rational diameter_squared(const GeoObject& o);

// Triangle, polygon and segment shapes as vertex lists (CCW for polygons).
std::vector<Point> shape_vertices(const GeoObject& o);

struct SvgLabel {
    std::string text;
    int color = -1;
};
std::string render_svg(const Scene& s, std::span<const SvgLabel> labels = {});

}
