#pragma once

#include "geohom/generators.hpp"
#include "geohom/geometry.hpp"
#include "geohom/instance.hpp"
#include "geohom/solver.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace geohom {

struct CostTables {
    // vcost[v][a]
    std::vector<std::vector<Rational>> vcost;
    // Per G-edge (u < v): an |H| x |H| matrix indexed [a * |H| + b] for
    // f(u) = a, f(v) = b, kept symmetric in (a, b).
    std::optional<std::map<std::pair<int, int>, std::vector<Rational>>> ecost;
    Rational budget = 0;

    Rational edge_cost(int u, int v, int a, int b) const;
    void set_edge_cost(int u, int v, int a, int b, const Rational& q, int h);
};

CostTables zero_costs(int n, int h);

// Sum of vertex and edge costs of a total map.
Rational total_cost(const Graph& g, const CostTables& costs, const Assignment& f);

struct MinCostResult {
    // yes: a homomorphism exists (within the cap, if one was given).
    Answer answer = Answer::no;
    std::optional<Rational> cost;
    Assignment witness;
    SolveStats stats;
};

std::pair<Graph, CostTables> lists_to_costs(const ListInstance& inst);

// cap, when given, restricts the search to maps of cost <= cap.
MinCostResult solve_mincost(const Graph& g, const TargetGraph& h, const CostTables& costs, const SeparatorProvider& provider = {},
    const SolveConfig& cfg = {}, const std::optional<Rational>& cap = {});
MinCostResult solve_whom(const Graph& g, const TargetGraph& h, const CostTables& costs, const SeparatorProvider& provider = {},
    const SolveConfig& cfg = {}, const std::optional<Rational>& cap = {});
// Lists act as hard constraints on top of the costs.
MinCostResult solve_mincost(const ListInstance& inst, const CostTables& costs, const SeparatorProvider& provider = {},
    const SolveConfig& cfg = {}, const std::optional<Rational>& cap = {});
MinCostResult solve_whom(const ListInstance& inst, const CostTables& costs, const SeparatorProvider& provider = {},
    const SolveConfig& cfg = {}, const std::optional<Rational>& cap = {});

struct TransferResult {
    // G minus the colored vertices; vertex i is vertex_map[i] of G.
    Graph graph;
    std::vector<int> vertex_map;
    CostTables costs;
    // Costs of colored vertices and of edges inside the colored set.
    Rational offset = 0;
};

TransferResult transfer_edge_costs(const Graph& g, const CostTables& costs, const Assignment& colored, int h);

struct WeightedInstance {
    Graph graph;
    TargetGraph target;
    CostTables costs;
};

WeightedInstance encode_vertex_cover(const Graph& g);
// Missing weights default to 1.
WeightedInstance encode_max_cut(const Graph& g, const std::map<std::pair<int, int>, Rational>& weights = {});

// Reflexive C4 on 1..4.
TargetGraph reflexive_c4();

GadgetTemplate mchom_vertex_template();

struct MchomInstance {
    Scene scene;
    Graph graph;
    TargetGraph target;
    CostTables costs;
    // The emulated lists (informational; the costs already enforce them).
    std::vector<ColorSet> lists;
};

MchomInstance gen_mchom_vc_triangles(const Graph& g, const Rational& k);

}
