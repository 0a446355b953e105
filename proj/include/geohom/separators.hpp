#pragma once

#include "geohom/geometry.hpp"
#include "geohom/graph.hpp"
#include "geohom/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace geohom {

struct CliqueSeparator {
    std::vector<std::vector<int>> cliques;
    Rational delta{2, 3};

    // Sum of log2(|C_i| + 1).
    double weight() const;
    std::vector<int> vertices() const;
};

// Every component of g - s has at most delta * n vertices.
bool is_balanced(const Graph& g, std::span<const int> s, const Rational& delta);
bool verify_clique_separator(const Graph& g, const CliqueSeparator& sep);

// ceil(factor * sqrt(m)), computed exactly.
std::size_t separator_budget(std::size_t m, const Rational& factor);

std::optional<std::vector<int>> balanced_vertex_separator(const Graph& g, const Rational& delta, std::size_t size_budget,
    std::uint64_t seed = 1);

// Greedy partition of s into cliques of g, largest first.
std::vector<std::vector<int>> greedy_clique_cover(const Graph& g, std::span<const int> s);

std::optional<CliqueSeparator> clique_based_separator(const Scene& s, const Graph& g, const Rational& delta);

enum class Axis { vertical, horizontal };

struct LineSeparation {
    bool small_area = false;
    Axis axis = Axis::vertical;
    // The line is x = line (vertical) or y = line (horizontal).
    std::int64_t line = 0;
    std::vector<int> crossing, left, right;
};

// Does the convex hull of o meet the grid line?
bool hull_crosses(const GeoObject& o, Axis axis, std::int64_t line);

LineSeparation line_separator(const Scene& s, const Rational& c_area, const Rational& r_max);
// Same choice without the validation and connectivity checks.
LineSeparation line_separator_unchecked(const Scene& s, const Rational& c_area);

// Partition, hull disjointness and the 3/4 area bound, recomputed.
bool verify_line_separation(const Scene& s, const LineSeparation& sep);

// area <= c_area * n^(2/3), decided exactly as area^3 <= c_area^3 * n^2.
bool small_area(std::int64_t area, std::size_t n, const Rational& c_area);

// `sep clique v1 v2 ...` lines.
std::string format_separator(const CliqueSeparator& sep);

}
