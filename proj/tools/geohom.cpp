#include "geohom/cli.hpp"
#include "geohom/errors.hpp"
#include "geohom/formats.hpp"
#include "geohom/generators.hpp"
#include "geohom/target_graph.hpp"
#include "geohom/weighted.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

using namespace geohom;
namespace fs = std::filesystem;

namespace {

constexpr int exit_yes = 0, exit_no = 1, exit_error = 2;

struct Tuning {
    std::optional<std::string> config, method, c_area, delta, size_budget, r_max;
    std::optional<double> deg_exponent, time_limit;
    std::optional<int> base_n, jobs;
    std::optional<std::uint64_t> seed, node_limit;

    void add_to(CLI::App* app)
    {
        app->add_option("--config", config, "JSON file with run settings");
        app->add_option("--method", method, "auto|brute|string|cliquebased|fat|twosat|mincost|whom");
        app->add_option("--deg-exponent", deg_exponent, "high-degree threshold exponent");
        app->add_option("--c-area", c_area, "small-area constant (rational, >= 1)");
        app->add_option("--base-n", base_n, "brute-force cutoff");
        app->add_option("--delta", delta, "separator balance (rational)");
        app->add_option("--size-budget", size_budget, "separator size budget factor (rational)");
        app->add_option("--r-max", r_max, "size bound for fat scenes (rational)");
        app->add_option("--seed", seed, "random seed (GEOHOM_SEED overrides)");
        app->add_option("--jobs", jobs, "parallel workers");
        app->add_option("--time-limit", time_limit, "seconds, 0 = none");
        app->add_option("--node-limit", node_limit, "search nodes, 0 = none");
    }

    RunConfig build() const
    {
        RunConfig cfg;
        if (config)
            apply_config_json(cfg, read_file(*config));
        if (method)
            cfg.method = parse_method(*method);
        if (deg_exponent)
            cfg.deg_exponent = *deg_exponent;
        if (c_area)
            cfg.c_area = parse_rational(*c_area);
        if (base_n)
            cfg.base_n = *base_n;
        if (delta)
            cfg.delta = parse_rational(*delta);
        if (size_budget)
            cfg.size_budget = parse_rational(*size_budget);
        if (r_max)
            cfg.r_max = parse_rational(*r_max);
        if (seed)
            cfg.seed = *seed;
        if (jobs)
            cfg.jobs = *jobs;
        if (time_limit)
            cfg.time_limit = *time_limit;
        if (node_limit)
            cfg.node_limit = *node_limit;
        apply_env_seed(cfg);
        cfg.validate();
        return cfg;
    }
};

std::string labels_of(const TargetGraph& h, ColorSet s)
{
    std::string out;
    for_each_color(s, [&](int a) { out += (out.empty() ? "" : " ") + h.label(a); });
    return out.empty() ? "-" : out;
}

int analyze_h(const std::string& path)
{
    auto h = parse_target(read_file(path));
    auto part = reflexive_partition(h);
    std::cout << "vertices " << h.size() << '\n';
    std::cout << "reflexive " << labels_of(h, part.reflexive) << '\n';
    std::cout << "irreflexive " << labels_of(h, part.irreflexive) << '\n';
    auto mrc = max_reflexive_clique(h);
    std::cout << "mrc " << mrc.size << '\n';
    std::cout << "max_reflexive_clique " << labels_of(h, mrc.members) << '\n';
    if (auto p = find_predator(h))
        std::cout << "predator " << h.label(p->a1) << ' ' << h.label(p->a2) << ' ' << h.label(p->b1) << ' ' << h.label(p->b2) << '\n';
    else
        std::cout << "predator none\n";
    std::cout << "strong_split " << (is_strong_split(h) ? "yes" : "no") << '\n';
    auto assoc = build_associated_bipartite(h);
    int edges = 0;
    for (int a = 0; a < assoc.hstar.size(); ++a)
        for (int b = a; b < assoc.hstar.size(); ++b)
            edges += assoc.hstar.adjacent(a, b);
    std::cout << "hstar_vertices " << assoc.hstar.size() << '\n';
    std::cout << "hstar_edges " << edges << '\n';
    return 0;
}

struct SolveArgs {
    std::vector<std::string> files;
    std::optional<std::string> scene, encode, budget;
    bool witness = false, csv = false;
};

int solve(const SolveArgs& a, const Tuning& t)
{
    RunConfig cfg = t.build();
    Problem p;
    std::string id;
    if (a.encode) {
        if (a.files.size() != 1)
            throw ParseError("--encode takes a single graph file");
        Graph g = parse_graph(read_file(a.files[0]));
        WeightedInstance w;
        if (*a.encode == "vc")
            w = encode_vertex_cover(g);
        else if (*a.encode == "maxcut")
            w = encode_max_cut(g);
        else
            throw ParseError("unknown encoding '" + *a.encode + "'");
        if (a.budget)
            w.costs.budget = parse_rational(*a.budget);
        p.target = std::make_shared<const TargetGraph>(w.target);
        p.instance = make_instance(p.target, w.graph, std::vector<ColorSet>(g.num_vertices(), w.target.all()));
        p.costs = std::move(w.costs);
        id = fs::path(a.files[0]).stem().string();
    }
    else {
        if (a.files.size() != 2)
            throw ParseError("solve takes <H> <instance>");
        p = load_problem(a.files[0], a.files[1], a.scene);
        if (a.budget) {
            if (! p.costs)
                p.costs = zero_costs(p.instance.size(), p.target->size());
            p.costs->budget = parse_rational(*a.budget);
        }
        id = fs::path(a.files[1]).stem().string();
    }
    auto o = run(p, cfg);
    std::cout << "answer " << to_string(o.answer) << '\n';
    std::cout << "method " << to_string(o.method) << '\n';
    std::cout << "nodes " << o.stats.nodes << '\n';
    if (o.cost)
        std::cout << "cost " << format_rational(*o.cost) << '\n';
    if (a.witness && o.answer == Answer::yes)
        for (int v = 0; v < p.instance.size(); ++v)
            std::cout << "f " << v << ' ' << p.target->label(o.witness[v]) << '\n';
    if (a.csv)
        std::cout << bench_header() << format_record(make_record(id, p, o), false);
    if (o.answer == Answer::timeout)
        std::cerr << "geohom: time or node limit reached\n";
    return o.answer == Answer::yes ? exit_yes : o.answer == Answer::no ? exit_no : exit_error;
}

struct GenOutputs {
    std::optional<std::string> scene, instance, target, render;
};

std::string relative_to(const std::string& target, const std::string& from_file)
{
    return fs::absolute(target).lexically_proximate(fs::absolute(from_file).parent_path()).generic_string();
}

void write_generated(const GenOutputs& out, const Scene& scene, InstanceFile file, const TargetGraph& h)
{
    if (out.scene) {
        write_file(*out.scene, format_scene(scene));
        if (out.instance)
            file.scene_path = relative_to(*out.scene, *out.instance);
    }
    if (out.render)
        write_file(*out.render, render_svg(scene));
    std::string text = format_instance(file, h);
    if (out.instance)
        write_file(*out.instance, text);
    else
        std::cout << text;
    std::optional<std::string> target = out.target;
    if (! target && out.instance)
        target = fs::path(*out.instance).replace_extension(".h").string();
    if (target)
        write_file(*target, format_target(h));
}

int gen_convexfat(const std::string& cnf, const GenOutputs& out)
{
    auto f = parse_dimacs(read_file(cnf));
    auto g = gen_convexfat_3sat(f);
    write_generated(out, g.scene, instance_file(g.instance), g.instance.h());
    return 0;
}

int gen_vc(const std::string& graph, const std::string& k, const GenOutputs& out)
{
    auto g = parse_graph(read_file(graph));
    auto m = gen_mchom_vc_triangles(g, parse_rational(k));
    InstanceFile file;
    file.graph = m.graph;
    file.lists.assign(m.graph.num_vertices(), m.target.all());
    file.has_list.assign(m.graph.num_vertices(), false);
    file.costs = m.costs;
    write_generated(out, m.scene, std::move(file), m.target);
    return 0;
}

int bench_cmd(const std::string& dir, const std::vector<std::string>& methods, bool omit_time, const std::optional<std::string>& output,
    const Tuning& t)
{
    RunConfig cfg = t.build();
    std::vector<Method> ms;
    for (const auto& m : methods)
        ms.push_back(parse_method(m));
    if (ms.empty())
        ms.push_back(cfg.method);
    std::string csv = bench(dir, ms, cfg, omit_time);
    if (output)
        write_file(*output, csv);
    else
        std::cout << csv;
    return 0;
}

}

int main(int argc, char** argv)
{
    CLI::App app{"List homomorphisms on geometric intersection graphs"};
    app.require_subcommand(1);

    std::string h_path;
    auto* analyze = app.add_subcommand("analyze-h", "Structural report for a target graph H");
    analyze->add_option("H", h_path, "target graph file")->required();

    SolveArgs sa;
    Tuning solve_tuning;
    auto* solve_cmd = app.add_subcommand("solve", "Decide an instance; exit 0 = YES, 1 = NO, 2 = error");
    solve_cmd->add_option("files", sa.files, "<H> <instance>, or <graph> with --encode")->required();
    solve_cmd->add_option("--scene", sa.scene, "scene file (overrides the instance's scene line)");
    solve_cmd->add_option("--encode", sa.encode, "vc|maxcut: read a graph and solve its weighted encoding");
    solve_cmd->add_option("--budget", sa.budget, "cost budget (rational)");
    solve_cmd->add_flag("--witness", sa.witness, "print the homomorphism on YES");
    solve_cmd->add_flag("--csv", sa.csv, "print the run as a CSV record");
    solve_tuning.add_to(solve_cmd);

    auto* gen = app.add_subcommand("gen", "Instance generators");
    gen->require_subcommand(1);
    std::string cnf_path, graph_path, k_text;
    GenOutputs gc, gv;
    auto add_outputs = [](CLI::App* c, GenOutputs& o) {
        c->add_option("-o,--scene-out", o.scene, "scene output file");
        c->add_option("-i,--instance-out", o.instance, "instance output file (stdout if absent)");
        c->add_option("--target", o.target, "H output file (default: instance path with .h)");
        c->add_option("--render", o.render, "SVG rendering of the scene");
    };
    auto* gen_cf = gen->add_subcommand("convexfat", "3-CNF to an LHom instance of equilateral triangles");
    gen_cf->add_option("cnf", cnf_path, "DIMACS CNF file")->required();
    add_outputs(gen_cf, gc);
    auto* gen_v = gen->add_subcommand("vc", "Vertex cover to min-cost homomorphism on triangles");
    gen_v->add_option("graph", graph_path, "graph file (G/e lines)")->required();
    gen_v->add_option("k", k_text, "cover budget")->required();
    add_outputs(gen_v, gv);

    std::string bench_dir;
    std::vector<std::string> bench_methods;
    bool omit_time = false;
    std::optional<std::string> bench_out;
    Tuning bench_tuning;
    auto* bench_sub = app.add_subcommand("bench", "Run every *.inst in a directory and print CSV");
    bench_sub->add_option("dir", bench_dir, "corpus directory")->required();
    bench_sub->add_option("--methods", bench_methods, "methods to run per instance")->delimiter(',');
    bench_sub->add_flag("--omit-time", omit_time, "write '-' for wall time so output is reproducible");
    bench_sub->add_option("-o,--output", bench_out, "CSV output file");
    bench_tuning.add_to(bench_sub);

    std::string scene_path;
    std::optional<std::string> svg_out;
    auto* render = app.add_subcommand("render", "Scene to SVG");
    render->add_option("scene", scene_path, "scene file")->required();
    render->add_option("-o,--output", svg_out, "SVG file (stdout if absent)");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_error;
    }

    try {
        if (*analyze)
            return analyze_h(h_path);
        if (*solve_cmd)
            return solve(sa, solve_tuning);
        if (*gen_cf)
            return gen_convexfat(cnf_path, gc);
        if (*gen_v)
            return gen_vc(graph_path, k_text, gv);
        if (*bench_sub)
            return bench_cmd(bench_dir, bench_methods, omit_time, bench_out, bench_tuning);
        if (*render) {
            std::string svg = render_svg(parse_scene(read_file(scene_path)));
            if (svg_out)
                write_file(*svg_out, svg);
            else
                std::cout << svg;
            return 0;
        }
    }
    catch (const std::exception& e) {
        std::cerr << "geohom: " << e.what() << '\n';
        return exit_error;
    }
    return exit_error;
}
