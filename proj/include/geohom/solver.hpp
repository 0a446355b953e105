#pragma once

#include "geohom/geometry.hpp"
#include "geohom/instance.hpp"
#include "geohom/separators.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace geohom {

struct PreprocessResult {
    bool unsat = false;
    // Instance on the surviving vertices; vertex i is vertex_map[i] of the input.
    ListInstance reduced;
    std::vector<int> vertex_map;
    // Colors of eliminated vertices (unassigned elsewhere).
    Assignment forced;
};

PreprocessResult preprocess(const ListInstance& inst);

SolveResult solve_bruteforce(const ListInstance& inst, const SolveConfig& cfg = {});
SolveResult solve_2sat(const ListInstance& inst, const SolveConfig& cfg = {});

// Streams every list-respecting coloring of a clique of G. Each yielded
// assignment is partial (only clique vertices set); return false to stop.
void enumerate_clique_colorings(std::span<const int> clique, const ListInstance& inst,
    const std::function<bool(const Assignment&)>& visit);

// Degree threshold used by the high-degree branching rule.
double degree_threshold(std::size_t n, const SolveConfig& cfg);

SolveResult solve_string(const ListInstance& inst, const SolveConfig& cfg = {});

// Given the subgraph induced by ids (local indices), returns a clique
// separator of it in local indices, or nothing.
using SeparatorProvider = std::function<std::optional<CliqueSeparator>(const Graph& sub, std::span<const int> ids)>;

SeparatorProvider scene_separator_provider(const Scene& scene, const Rational& delta);
SeparatorProvider fallback_separator_provider(const Rational& delta, const Rational& budget_factor, std::uint64_t seed = 1);

SolveResult solve_cliquebased(const ListInstance& inst, const SeparatorProvider& provider, const SolveConfig& cfg = {});

}
