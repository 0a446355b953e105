#include "support.hpp"

#include "geohom/errors.hpp"
#include "geohom/fat_solver.hpp"

#include <doctest.h>

#include <memory>

using namespace geohom;
using namespace support;

namespace {

std::shared_ptr<const TargetGraph> h5() { return std::make_shared<const TargetGraph>(target_h5()); }

bool oracle_is_rc(const ListInstance& inst)
{
    for (ColorSet l : inst.lists)
        for (int a = 0; a < inst.h().size(); ++a)
            for (int b = 0; b < inst.h().size(); ++b)
                if ((l >> a & 1U) && (l >> b & 1U) && ! inst.h().adjacent(a, b))
                    return false;
    return true;
}

// Stream OR: some branch has a list homomorphism, and it extends the forced
// colors to a homomorphism of the input.
bool stream_or(const ListInstance& inst, const std::vector<std::vector<int>>& cells, bool propagate, int& branches)
{
    bool found = false;
    branches = 0;
    reduce_to_rc(inst, cells, [&](const RcBranch& b) {
        ++branches;
        CHECK(oracle_is_rc(b.instance));
        bool hit = false;
        enumerate_homs(b.instance.graph, b.instance.lists, b.instance.h(), [&](const std::vector<int>& f) {
            Assignment full = b.forced;
            for (std::size_t i = 0; i < f.size(); ++i)
                full[b.vertex_map[i]] = f[i];
            CHECK(is_hom(inst, full));
            hit = true;
            return false;
        });
        found = found || hit;
        return true;
    }, {propagate});
    return found;
}

}

TEST_SUITE("fat_solver") {

TEST_CASE("reflexive-clique lists")
{
    auto h = h5();
    Graph g(2);
    auto yes = make_instance(h, g, {color_bit(0) | color_bit(1), color_bit(2)});
    auto no = make_instance(h, g, {color_bit(0) | color_bit(2), color_bit(0)});
    CHECK(is_rc_instance(make_instance(h, g, {color_bit(0) | color_bit(1), color_bit(1)})));
    // Color 3 is irreflexive, so {3} is not a reflexive clique.
    CHECK_FALSE(is_rc_instance(yes));
    CHECK_FALSE(is_rc_instance(no));
    CHECK_THROWS_AS(solve_rc(no), PreconditionError);

    Rng rng(51);
    for (int iter = 0; iter < 200; ++iter) {
        auto t = std::make_shared<const TargetGraph>(random_target(rng, 1 + pick(rng, 5), 60, 60));
        int n = 1 + pick(rng, 8);
        auto inst = make_instance(t, random_graph(rng, n, 40), random_lists(rng, n, *t));
        CHECK(is_rc_instance(inst) == oracle_is_rc(inst));
        if (! oracle_is_rc(inst))
            continue;
        auto r = solve_rc(inst);
        CHECK(r.yes() == oracle_lhom(inst));
        if (r.yes())
            CHECK(is_hom(inst, r.witness));
    }
}

TEST_CASE("reduction on a single cell")
{
    // Two disks in one cell, both with the full H5 list.
    auto h = h5();
    Graph g(2);
    g.add_edge(0, 1);
    auto inst = make_instance(h, g, {h->all(), h->all()});
    int branches = 0;
    CHECK(stream_or(inst, {{0, 1}}, false, branches));
    CHECK(branches > 0);

    // Lists {3} and {4}: 3-4 is an edge, both irreflexive, so the only
    // branch guesses both vertices.
    auto forced = make_instance(h, g, {color_bit(2), color_bit(3)});
    std::vector<RcBranch> seen;
    reduce_to_rc(forced, {{0, 1}}, [&](const RcBranch& b) {
        seen.push_back(b);
        return true;
    });
    REQUIRE(seen.size() == 1);
    CHECK(seen[0].instance.size() == 0);
    CHECK(seen[0].forced == Assignment{2, 3});

    CHECK_THROWS_AS(reduce_to_rc(inst, {{0}}, [](const RcBranch&) { return true; }), PreconditionError);
    CHECK_THROWS_AS(reduce_to_rc(inst, {{0, 1}, {1}}, [](const RcBranch&) { return true; }), PreconditionError);
}

TEST_CASE("stream OR matches the oracle")
{
    Rng rng(52);
    for (int iter = 0; iter < 150; ++iter) {
        auto t = std::make_shared<const TargetGraph>(iter % 2 ? target_h5() : random_target(rng, 2 + pick(rng, 4)));
        int n = 1 + pick(rng, 10);
        auto scene = random_disk_scene(rng, n, 16);
        auto inst = make_instance(t, intersection_graph(scene), random_lists(rng, n, *t));
        bool truth = oracle_lhom(inst);
        for (bool propagate : {false, true}) {
            int branches = 0;
            CHECK(stream_or(inst, cell_cliques(scene), propagate, branches) == truth);
        }
    }
}

TEST_CASE("fat solver matches the oracle")
{
    Rng rng(53);
    for (int iter = 0; iter < 150; ++iter) {
        auto t = std::make_shared<const TargetGraph>(iter % 2 ? target_h5() : random_target(rng, 2 + pick(rng, 4)));
        int n = 1 + pick(rng, 16);
        auto scene = random_disk_scene(rng, n, 20 + pick(rng, 40));
        auto inst = make_instance(t, intersection_graph(scene), random_lists(rng, n, *t));
        SolveConfig cfg;
        cfg.c_area = 1 + pick(rng, 3);
        auto r = solve_fat(inst, scene, cfg);
        CHECK(r.yes() == oracle_lhom(inst));
        if (r.yes())
            CHECK(is_hom(inst, r.witness));
    }
}

TEST_CASE("fat solver recurses on a long chain")
{
    auto h = h5();
    Scene chain;
    int n = 60;
    for (int i = 0; i < n; ++i)
        chain.objects.push_back(disk(Rational(3 * i, 2), 0, Rational(3, 4)));
    auto g = intersection_graph(chain);
    CHECK(g.num_edges() == static_cast<std::size_t>(n - 1));
    auto inst = make_instance(h, g, std::vector<ColorSet>(n, color_bit(2) | color_bit(3) | color_bit(4)));
    SolveConfig cfg;
    cfg.c_area = 1;
    auto r = solve_fat(inst, chain, cfg);
    // 3-4-5 is a path of irreflexive colors, so an alternating coloring works.
    REQUIRE(r.yes());
    CHECK(is_hom(inst, r.witness));
    CHECK(r.stats.separators > 0);
    CHECK(r.stats.max_area_ratio <= 0.75);

    // An odd cycle of forced irreflexive colors fails: pin both ends of the
    // chain so that parity breaks.
    auto pinned = inst;
    pinned.lists.assign(n, color_bit(2) | color_bit(3));
    pinned.lists[0] = color_bit(2);
    pinned.lists[n - 1] = color_bit(2);
    CHECK_FALSE(solve_fat(pinned, chain, cfg).yes());
}

TEST_CASE("fat solver preconditions")
{
    auto h = h5();
    Scene s{{disk(0, 0, 1), disk(1, 0, 1)}};
    auto inst = make_instance(h, intersection_graph(s), {h->all(), h->all()});
    SolveConfig cfg;
    cfg.c_area = Rational(1, 2);
    CHECK_THROWS_AS(solve_fat(inst, s, cfg), PreconditionError);
    auto wrong = make_instance(h, Graph(2), {h->all(), h->all()});
    CHECK_THROWS_AS(solve_fat(wrong, s, {}), PreconditionError);
    Scene big{{disk(0, 0, 3), disk(1, 0, 1)}};
    CHECK_THROWS_AS(solve_fat(inst, big, {}), PreconditionError);
}

}
