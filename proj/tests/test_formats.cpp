#include "support.hpp"

#include "geohom/errors.hpp"
#include "geohom/formats.hpp"

#include <doctest.h>

using namespace geohom;
using namespace support;

namespace {

const char* target_text = "H 3\nv a\nv b\nv c\ne a b\ne c c\n";

const char* scene_text =
    "disk 0 0 3/4\n"
    "disk 3/2 0 1 anchor 3/2 0\n"
    "seg 0 0 1 1\n"
    "tri 0 0 4 0 2 3 anchor 2 1\n"
    "poly 4 0 0 2 0 2 2 0 2\n"
    "pline 3 0 0 1 1 2 0\n";

const char* instance_text =
    "G 3\n"
    "scene x.scene\n"
    "e 0 1\n"
    "e 1 2\n"
    "l 0 a b\n"
    "wv 1 c 1/2\n"
    "we 0 1 a b 2\n"
    "budget 3\n";

}

TEST_SUITE("formats") {

TEST_CASE("target graph canonical form")
{
    auto h = parse_target("# comment\nH 3\n\nv a\nv b\nv c\ne b a\ne c c\n");
    CHECK(format_target(h) == target_text);
    CHECK(h.adjacent(0, 1));
    CHECK(h.reflexive(2));
    CHECK_FALSE(h.reflexive(0));
    CHECK(format_target(parse_target(target_text)) == target_text);

    CHECK_THROWS_AS(parse_target("H 2\nv a\n"), ParseError);
    CHECK_THROWS_AS(parse_target("H 1\nv a\ne a z\n"), ParseError);
    CHECK_THROWS_AS(parse_target("H 2\nv a\nv a\n"), ParseError);
    CHECK_THROWS_AS(parse_target("v a\n"), ParseError);
    CHECK_THROWS_AS(parse_target("H 1\nv a\nq a\n"), ParseError);
}

TEST_CASE("scene canonical form")
{
    auto s = parse_scene("disk 0 0 0.75\ndisk 1.5 0 1 anchor 1.5 0\nseg 0 0 1 1\ntri 0 0 4 0 2 3 anchor 2 1\n"
                         "poly 4 0 0 2 0 2 2 0 2\npline 3 0 0 1 1 2 0\n");
    CHECK(format_scene(s) == scene_text);
    CHECK(parse_scene(scene_text) == s);
    CHECK(s.objects[1].anchor == Point{Rational(3, 2), 0});
    CHECK_FALSE(s.objects[0].anchor);

    CHECK_THROWS_AS(parse_scene("disk 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_scene("disk 0 0 -1\n"), Error);
    CHECK_THROWS_AS(parse_scene("circle 0 0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_scene("poly 3 0 0 1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_scene("disk 0 0 1/0\n"), ParseError);
}

TEST_CASE("random scenes round trip")
{
    Rng rng(81);
    for (int iter = 0; iter < 50; ++iter) {
        auto s = random_disk_scene(rng, 1 + pick(rng, 20), 40);
        auto text = format_scene(s);
        CHECK(parse_scene(text) == s);
        CHECK(format_scene(parse_scene(text)) == text);
    }
}

TEST_CASE("instance canonical form")
{
    auto h = parse_target(target_text);
    auto f = parse_instance("G 3\ne 1 0\ne 1 2\nl 0 a b\nwv 1 c 1/2\nwe 0 1 a b 2\nbudget 3\nscene x.scene\n", h);
    CHECK(format_instance(f, h) == instance_text);
    CHECK(format_instance(parse_instance(instance_text, h), h) == instance_text);
    CHECK(f.scene_path == "x.scene");
    CHECK(f.has_list == std::vector<bool>{true, false, false});
    CHECK(f.lists[0] == (color_bit(0) | color_bit(1)));
    CHECK(f.lists[1] == h.all());
    REQUIRE(f.costs);
    CHECK(f.costs->budget == 3);
    CHECK(f.costs->vcost[1][2] == Rational(1, 2));
    CHECK(f.costs->edge_cost(0, 1, 0, 1) == 2);
    CHECK(f.costs->edge_cost(0, 1, 1, 0) == 2);

    auto plain = parse_instance("G 2\ne 0 1\n", h);
    CHECK_FALSE(plain.costs);
    CHECK(format_instance(plain, h) == "G 2\ne 0 1\n");

    CHECK_THROWS_AS(parse_instance("G 2\ne 0 2\n", h), ParseError);
    CHECK_THROWS_AS(parse_instance("G 2\ne 0 0\n", h), ParseError);
    CHECK_THROWS_AS(parse_instance("G 2\nl 0 z\n", h), ParseError);
    CHECK_THROWS_AS(parse_instance("G 3\ne 0 1\nwe 0 2 a b 1\n", h), ParseError);
    CHECK_THROWS_AS(parse_instance("e 0 1\n", h), ParseError);
    CHECK_THROWS_AS(parse_instance("G 2\nbudget x\n", h), ParseError);
}

TEST_CASE("list instances round trip")
{
    Rng rng(82);
    for (int iter = 0; iter < 50; ++iter) {
        auto h = std::make_shared<const TargetGraph>(random_target(rng, 1 + pick(rng, 6)));
        int n = 1 + pick(rng, 10);
        auto inst = make_instance(h, random_graph(rng, n, 30), random_lists(rng, n, *h));
        auto text = format_instance(instance_file(inst), *h);
        auto back = to_list_instance(parse_instance(text, *h), h);
        CHECK(back.graph == inst.graph);
        CHECK(back.lists == inst.lists);
        CHECK(format_target(parse_target(format_target(*h))) == format_target(*h));
    }
}

TEST_CASE("graphs and DIMACS")
{
    auto g = parse_graph("G 3\ne 2 1\n");
    CHECK(g.has_edge(1, 2));
    CHECK(format_graph(g) == "G 3\ne 1 2\n");
    CnfFormula c;
    c.num_vars = 2;
    c.clauses = {{1, -2, 2}};
    CHECK(format_dimacs(c) == "p cnf 2 1\n1 -2 2 0\n");
}

}
