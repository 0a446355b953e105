#pragma once

#include "geohom/graph.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace geohom {

// Color sets are bitmasks over V(H); H has at most 32 vertices.
using ColorSet = std::uint32_t;
inline constexpr int max_target_vertices = 32;

inline constexpr ColorSet color_bit(int a) { return ColorSet{1} << a; }
inline int color_count(ColorSet s) { return std::popcount(s); }
inline int lowest_color(ColorSet s) { return std::countr_zero(s); }

template <typename F>
void for_each_color(ColorSet s, F&& f)
{
    while (s) {
        int a = std::countr_zero(s);
        s &= s - 1;
        f(a);
    }
}

class TargetGraph {
public:
    TargetGraph() = default;
    explicit TargetGraph(std::vector<std::string> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int a) const { return labels_[a]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<int> find(std::string_view label) const;
    int index_of(std::string_view label) const;

    // a == b adds a loop.
    void add_edge(int a, int b);
    bool adjacent(int a, int b) const { return (nbr_[a] >> b) & 1U; }
    bool reflexive(int a) const { return adjacent(a, a); }
    ColorSet neighbors(int a) const { return nbr_[a]; }
    ColorSet neighbors_of_set(ColorSet s) const;
    ColorSet all() const { return size() == 32 ? ~ColorSet{0} : (color_bit(size()) - 1); }

    friend bool operator==(const TargetGraph&, const TargetGraph&) = default;

private:
    std::vector<std::string> labels_;
    std::vector<ColorSet> nbr_;
};

struct ReflexivePartition {
    ColorSet reflexive = 0;
    ColorSet irreflexive = 0;
};
ReflexivePartition reflexive_partition(const TargetGraph& h);

struct ReflexiveClique {
    int size = 0;
    ColorSet members = 0;
};
// Exhaustive search; throws above 24 vertices.
ReflexiveClique max_reflexive_clique(const TargetGraph& h);
// All inclusion-maximal reflexive cliques, ordered by mask.
std::vector<ColorSet> maximal_reflexive_cliques(const TargetGraph& h);

enum class Comparability { a_le_b, b_le_a, equal, incomparable };
Comparability comparability(const TargetGraph& h, int a, int b);

struct Predator {
    int a1, a2, b1, b2;
    friend bool operator==(const Predator&, const Predator&) = default;
};
std::optional<Predator> find_predator(const TargetGraph& h);

bool is_strong_split(const TargetGraph& h);

enum class Side { x, y };

struct BipartiteAssociate {
    TargetGraph hstar;
    std::vector<Side> side_of;
    // (vertex of H, tick) with tick 1 for a' and 2 for a''.
    std::vector<std::pair<int, int>> origin;

    int prime(int a) const { return a; }
    int double_prime(int a) const { return static_cast<int>(origin.size() / 2) + a; }
};
BipartiteAssociate build_associated_bipartite(const TargetGraph& h);

bool is_consistent_instance(const Graph& g, std::span<const ColorSet> lstar, const BipartiteAssociate& assoc);
std::vector<ColorSet> project_consistent(const Graph& g, std::span<const ColorSet> lstar, const BipartiteAssociate& assoc);

// Backtracking enumeration of every list homomorphism (G, L) -> H. The
// visitor sees a total color vector and returns false to stop early.
void for_each_list_homomorphism(const Graph& g, std::span<const ColorSet> lists, const TargetGraph& h,
    const std::function<bool(std::span<const int>)>& visit);

struct Gadget {
    Graph graph;
    std::vector<ColorSet> lists;
    std::vector<int> interface;
};

// The set of interface color tuples attained by list homomorphisms.
std::vector<std::vector<int>> interface_projection(const Gadget& g, const TargetGraph& h);

bool verify_or3_gadget(const Gadget& g, const TargetGraph& h, int a, int b);
bool verify_switch_gadget(const Gadget& g, const TargetGraph& h, int a, int b, int c, int d);

}
