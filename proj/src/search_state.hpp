#pragma once

// Shared mutable search state for the exact solvers: lists and liveness with
// an undo trail, arc-consistency propagation, and the witness color array.

#include "geohom/errors.hpp"
#include "geohom/instance.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace geohom::detail {

struct LimitReached {};

class SearchState {
public:
    SearchState(const Graph& g, const TargetGraph& h, std::vector<ColorSet> lists, const SolveConfig& cfg);

    const Graph& graph() const { return g_; }
    const TargetGraph& target() const { return h_; }
    const SolveConfig& config() const { return cfg_; }

    ColorSet list(int v) const { return lists_[v]; }
    bool alive(int v) const { return alive_[v]; }

    std::size_t mark() const { return trail_.size(); }
    void undo(std::size_t m);

    // L(v) &= mask. False (and no change) if the list would empty.
    bool restrict(int v, ColorSet mask);
    void kill(int v);

    // Color v with c, delete it, restrict its live neighbors and propagate.
    bool assign(int v, int c);
    // Arc consistency (rule 2) seeded by vertices whose lists changed.
    bool propagate(std::span<const int> seeds);

    std::vector<int> alive_in(std::span<const int> verts) const;
    // Components of the live subgraph induced by verts, each sorted.
    std::vector<std::vector<int>> components(std::span<const int> verts);
    int live_degree(int v) const;

    // Counts a search node and enforces the node/time limits.
    void node(int depth);

    std::vector<int>& colors() { return color_; }
    SolveStats& stats() { return stats_; }

private:
    struct Entry {
        int v;
        ColorSet list;
        bool alive;
    };
    void save(int v) { trail_.push_back({v, lists_[v], static_cast<bool>(alive_[v])}); }

    const Graph& g_;
    const TargetGraph& h_;
    const SolveConfig& cfg_;
    std::vector<ColorSet> lists_;
    std::vector<char> alive_;
    std::vector<Entry> trail_;
    std::vector<int> color_;
    std::vector<int> queue_;
    std::vector<char> queued_;
    std::vector<int> stamp_;
    int epoch_ = 0;
    SolveStats stats_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
};

// MRV backtracking with propagation over the live vertices of verts.
bool brute_force(SearchState& st, std::span<const int> verts, int depth);

// Live vertices of verts must have lists of size 1 or 2. Writes colors.
bool two_sat(SearchState& st, std::span<const int> verts);

// Rules 1-3 to a fixpoint on the live vertices of verts.
bool reduce_lists(SearchState& st, std::span<const int> verts);

// Streams colorings of order (in sequence) with propagation; visit returns
// true to stop with the state left in place.
bool for_each_coloring(SearchState& st, std::span<const int> order, const std::function<bool()>& visit);

// Removes a from L(v) whenever some b in L(v) dominates it.
ColorSet incomparable_core(const TargetGraph& h, ColorSet list);

Assignment collect_witness(SearchState& st);

// Runs body on a fresh state, mapping limits to TIMEOUT and checking the
// witness of every YES.
template <typename Body>
SolveResult run_search(const ListInstance& inst, const SolveConfig& cfg, Body&& body)
{
    SearchState st(inst.graph, inst.h(), inst.lists, cfg);
    SolveResult r;
    try {
        r.answer = body(st) ? Answer::yes : Answer::no;
    }
    catch (const LimitReached&) {
        r.answer = Answer::timeout;
    }
    r.stats = st.stats();
    if (r.answer == Answer::yes) {
        r.witness = st.colors();
        if (! verify_homomorphism(inst, r.witness))
            throw Error("internal error: solver produced an invalid witness");
    }
    return r;
}

}
