#pragma once

#include "geohom/graph.hpp"
#include "geohom/rational.hpp"
#include "geohom/target_graph.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace geohom {

struct ListInstance {
    std::shared_ptr<const TargetGraph> target;
    Graph graph;
    std::vector<ColorSet> lists;

    const TargetGraph& h() const { return *target; }
    int size() const { return graph.num_vertices(); }
};

// Checks list count and that every list lies within V(H).
ListInstance make_instance(std::shared_ptr<const TargetGraph> h, Graph g, std::vector<ColorSet> lists);
ListInstance make_instance(const TargetGraph& h, Graph g, std::vector<ColorSet> lists);

// Color per vertex; unassigned marks a vertex outside a partial map.
using Assignment = std::vector<int>;
inline constexpr int unassigned = -1;

enum class Answer { yes, no, timeout };
std::string to_string(Answer a);

struct SolveStats {
    std::uint64_t nodes = 0;
    int max_depth = 0;
    std::uint64_t separators = 0;
    std::uint64_t separator_colorings = 0;
    std::uint64_t fallbacks = 0;
    std::uint64_t rc_branches = 0;
    std::uint64_t two_sat_calls = 0;
    // Largest area(part) / area(whole) seen on a line-separator step.
    double max_area_ratio = 0;

    void merge(const SolveStats& o);
};

struct SolveResult {
    Answer answer = Answer::no;
    Assignment witness;
    SolveStats stats;

    bool yes() const { return answer == Answer::yes; }
};

struct SolveConfig {
    // High-degree branching threshold n^deg_exponent; the alternative
    // preset uses n^(1/2) * log2(n)^(2/3).
    double deg_exponent = 1.0 / 3.0;
    bool log_threshold = false;
    int base_n = 12;
    Rational delta{2, 3};
    Rational size_budget_factor{4};
    Rational c_area{9};
    Rational r_max{1};
    std::uint64_t seed = 1;
    std::uint64_t node_limit = 0;
    double time_limit = 0;
};

bool verify_homomorphism(const ListInstance& inst, const Assignment& f);

}
