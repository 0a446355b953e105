#pragma once

#include "geohom/geometry.hpp"
#include "geohom/instance.hpp"

#include <functional>
#include <vector>

namespace geohom {

// Every list induces a reflexive clique of H.
bool is_rc_instance(const ListInstance& inst);

struct RcBranch {
    // Instance on the surviving vertices; vertex i is vertex_map[i] of the input.
    ListInstance instance;
    std::vector<int> vertex_map;
    // Colors of the guessed (deleted) vertices.
    Assignment forced;
};

struct RcOptions {
    // Run arc consistency after each cell's clique restriction.
    bool propagate = false;
};

// Streams the branch family per cell: a set of at most |I(H)| vertices with
// distinct irreflexive colors (deleted after propagation), and a maximal
// reflexive clique intersected into the remaining lists. Branches with an
// empty list are skipped. visit returns false to stop.
void reduce_to_rc(const ListInstance& inst, const std::vector<std::vector<int>>& cells,
    const std::function<bool(const RcBranch&)>& visit, RcOptions options = {});

SolveResult solve_rc(const ListInstance& inst, const SolveConfig& cfg = {});

SolveResult solve_fat(const ListInstance& inst, const Scene& scene, const SolveConfig& cfg = {});

}
