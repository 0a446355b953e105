// One pass/fail line per acceptance criterion. Every check compares against
// an independent oracle from support.hpp or recomputes the property directly.

#include "support.hpp"

#include "geohom/cli.hpp"
#include "geohom/errors.hpp"
#include "geohom/fat_solver.hpp"
#include "geohom/formats.hpp"
#include "geohom/generators.hpp"
#include "geohom/separators.hpp"
#include "geohom/solver.hpp"
#include "geohom/weighted.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

using namespace geohom;
using namespace support;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

std::string line_for(int criterion, const Verdict& v)
{
    return "criterion " + std::to_string(criterion) + ": " + (v.pass ? "PASS" : "FAIL") + " | " + v.detail + "\n";
}

// Shared corpus of scene-backed random instances, n <= 10, |V(H)| <= 5.
struct CorpusItem {
    Scene scene;
    ListInstance inst;
};

std::vector<CorpusItem> make_corpus(std::uint64_t seed, int count)
{
    Rng rng(seed);
    std::vector<CorpusItem> out;
    for (int i = 0; i < count; ++i) {
        auto h = std::make_shared<const TargetGraph>(random_target(rng, 1 + pick(rng, 5), 20 + pick(rng, 60), 30 + pick(rng, 50)));
        int n = 1 + pick(rng, 10);
        auto scene = random_disk_scene(rng, n, 8 + pick(rng, 24));
        auto g = intersection_graph(scene);
        out.push_back({scene, make_instance(h, g, random_lists(rng, n, *h))});
    }
    return out;
}

ListInstance truncate_lists(const ListInstance& inst)
{
    auto out = inst;
    for (auto& l : out.lists)
        while (color_count(l) > 2)
            l &= l - 1;
    return out;
}

Verdict oracle_equivalence(const std::vector<CorpusItem>& corpus)
{
    int bad = 0, strings = 0, predators = 0;
    for (const auto& item : corpus) {
        const auto& inst = item.inst;
        bool truth = solve_bruteforce(inst).yes();
        auto agree = [&](const SolveResult& r, const ListInstance& on, bool expected) {
            if (r.yes() != expected || (r.yes() && ! is_hom(on, r.witness)))
                ++bad;
        };
        if (truth != oracle_lhom(inst))
            ++bad;
        if (find_predator(inst.h()))
            ++predators;
        else {
            ++strings;
            agree(solve_string(inst), inst, truth);
        }
        auto two = truncate_lists(inst);
        agree(solve_2sat(two), two, solve_bruteforce(two).yes());
        SolveConfig cfg;
        cfg.base_n = 3;
        agree(solve_cliquebased(inst, scene_separator_provider(item.scene, cfg.delta), cfg), inst, truth);
        agree(solve_cliquebased(inst, fallback_separator_provider(cfg.delta, cfg.size_budget_factor), cfg), inst, truth);
        SolveConfig fat;
        fat.c_area = 1;
        agree(solve_fat(inst, item.scene, fat), inst, truth);
        agree(solve_fat(inst, item.scene), inst, truth);
    }
    std::ostringstream d;
    d << corpus.size() << " instances, " << bad << " disagreements (string on " << strings << ", skipped " << predators
      << " with a predator; 2sat, cliquebased x2, fat x2 on all)";
    return {bad == 0 && corpus.size() >= 1000, d.str()};
}

Verdict preprocessing(const std::vector<CorpusItem>& corpus)
{
    int flips = 0, eliminated = 0, unsat = 0;
    for (const auto& item : corpus) {
        bool truth = solve_bruteforce(item.inst).yes();
        auto r = preprocess(item.inst);
        if (r.unsat) {
            ++unsat;
            flips += truth;
            continue;
        }
        eliminated += item.inst.size() - r.reduced.size();
        auto sub = solve_bruteforce(r.reduced);
        if (sub.yes() != truth) {
            ++flips;
            continue;
        }
        if (sub.yes()) {
            Assignment f = r.forced;
            for (std::size_t i = 0; i < r.vertex_map.size(); ++i)
                f[r.vertex_map[i]] = sub.witness[i];
            flips += ! is_hom(item.inst, f);
        }
    }
    std::ostringstream d;
    d << flips << " flips over " << corpus.size() << " instances (" << eliminated << " vertices eliminated, " << unsat
      << " refuted outright)";
    return {flips == 0, d.str()};
}

void for_each_clique(const Graph& g, std::size_t max_size, const std::function<void(const std::vector<int>&)>& visit)
{
    std::vector<int> cur;
    std::function<void(int)> go = [&](int from) {
        if (! cur.empty())
            visit(cur);
        if (cur.size() == max_size)
            return;
        for (int v = from; v < g.num_vertices(); ++v) {
            bool ok = std::all_of(cur.begin(), cur.end(), [&](int u) { return g.has_edge(u, v); });
            if (ok) {
                cur.push_back(v);
                go(v + 1);
                cur.pop_back();
            }
        }
    };
    go(0);
}

Verdict clique_colorings(const std::vector<CorpusItem>& corpus)
{
    long cliques = 0, mismatches = 0, colorings = 0;
    for (const auto& item : corpus) {
        const auto& inst = item.inst;
        for_each_clique(inst.graph, 6, [&](const std::vector<int>& k) {
            ++cliques;
            std::set<std::vector<int>> want;
            std::vector<ColorSet> lists;
            Graph kg(static_cast<int>(k.size()));
            for (std::size_t i = 0; i < k.size(); ++i) {
                lists.push_back(inst.lists[k[i]]);
                for (std::size_t j = i + 1; j < k.size(); ++j)
                    kg.add_edge(static_cast<int>(i), static_cast<int>(j));
            }
            enumerate_homs(kg, lists, inst.h(), [&](const std::vector<int>& f) {
                want.insert(f);
                return true;
            });
            std::set<std::vector<int>> got;
            bool dup = false;
            enumerate_clique_colorings(k, inst, [&](const Assignment& f) {
                std::vector<int> t;
                for (int v : k)
                    t.push_back(f[v]);
                dup = dup || ! got.insert(t).second;
                return true;
            });
            colorings += static_cast<long>(want.size());
            mismatches += dup || got != want;
        });
    }
    std::ostringstream d;
    d << mismatches << " mismatches over " << cliques << " cliques of size <= 6 (" << colorings << " colorings)";
    return {mismatches == 0, d.str()};
}

// Disks of radius 3/4 along a right-drifting random walk: connected, valid for
// R_max = 1, and spread out enough to exceed the small-area threshold.
Scene walk_scene(Rng& rng, int n)
{
    Scene s;
    Rational x = 0, y = 0;
    for (int i = 0; i < n; ++i) {
        s.objects.push_back(disk(x, y, Rational(3, 4)));
        Rational dx(pick(rng, 6), 4), dy(pick(rng, 9) - 4, 4);
        if (dx * dx + dy * dy > Rational(9, 4))
            dy = 0;
        x += dx;
        y += dy;
    }
    return s;
}

Verdict line_separators()
{
    Rng rng(404);
    const Rational c_area = 9, r_max = 1;
    // A closed object of diameter <= 2 R_max meets at most floor(2 R_max) + 1
    // integer grid lines of one direction.
    const int t = 3;
    int scenes = 0, drawn = 0, bad = 0, max_cross = 0;
    double worst = 0;
    while (scenes < 200) {
        ++drawn;
        auto s = walk_scene(rng, 20 + pick(rng, 80));
        if (small_area(area(s), s.size(), c_area))
            continue;
        ++scenes;
        auto sep = line_separator(s, c_area, r_max);
        bool ok = ! sep.small_area && verify_line_separation(s, sep);
        std::vector<int> seen(s.size(), 0);
        for (const auto* part : {&sep.crossing, &sep.left, &sep.right})
            for (int v : *part)
                ++seen[v];
        ok = ok && std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
        std::int64_t whole = area(s);
        for (const auto* part : {&sep.left, &sep.right}) {
            std::int64_t a = part->empty() ? 0 : area(s, *part);
            ok = ok && 4 * a <= 3 * whole;
            worst = std::max(worst, static_cast<double>(a) / static_cast<double>(whole));
            for (int v : *part)
                ok = ok && ! hull_crosses(s.objects[v], sep.axis, sep.line);
        }
        for (int v : sep.crossing) {
            ok = ok && hull_crosses(s.objects[v], sep.axis, sep.line);
            auto e = extent(s.objects[v]);
            const Rational& lo = sep.axis == Axis::vertical ? e.xmin : e.ymin;
            const Rational& hi = sep.axis == Axis::vertical ? e.xmax : e.ymax;
            int lines = 0;
            for (auto l = static_cast<std::int64_t>(std::floor(lo.convert_to<double>())) - 1;
                 l <= static_cast<std::int64_t>(std::ceil(hi.convert_to<double>())) + 1; ++l)
                lines += hull_crosses(s.objects[v], sep.axis, l);
            ok = ok && lines <= t;
            max_cross = std::max(max_cross, lines);
        }
        bad += ! ok;
    }
    std::ostringstream d;
    d.precision(4);
    d << bad << " violations over " << scenes << " scenes above threshold (" << drawn << " drawn); worst side area ratio "
      << worst << ", max lines per crossing object " << max_cross << " (t = " << t << ")";
    return {bad == 0, d.str()};
}

Verdict rc_pipeline(const std::vector<CorpusItem>& corpus)
{
    int bad = 0, branches = 0, non_rc = 0, dispatched = 0;
    for (const auto& item : corpus) {
        const auto& inst = item.inst;
        bool truth = solve_bruteforce(inst).yes();
        bool low_mrc = max_reflexive_clique(inst.h()).size <= 2;
        for (bool propagate : {false, true}) {
            bool any = false;
            reduce_to_rc(inst, cell_cliques(item.scene), [&](const RcBranch& b) {
                ++branches;
                if (! is_rc_instance(b.instance)) {
                    ++non_rc;
                    return true;
                }
                auto r = solve_rc(b.instance);
                bool sub = solve_bruteforce(b.instance).yes();
                if (r.yes() != sub)
                    ++bad;
                if (low_mrc) {
                    ++dispatched;
                    bool small = std::all_of(b.instance.lists.begin(), b.instance.lists.end(), [](ColorSet l) { return color_count(l) <= 2; });
                    bad += ! small || solve_2sat(b.instance).yes() != sub;
                }
                if (r.yes()) {
                    Assignment f = b.forced;
                    for (std::size_t i = 0; i < b.vertex_map.size(); ++i)
                        f[b.vertex_map[i]] = r.witness[i];
                    bad += ! is_hom(inst, f);
                    any = true;
                }
                return true;
            }, {propagate});
            bad += any != truth;
        }
    }
    std::ostringstream d;
    d << bad << " disagreements, " << non_rc << " non-RC branches over " << branches << " branches ("
      << dispatched << " 2-SAT dispatches with mrc <= 2)";
    return {bad == 0 && non_rc == 0, d.str()};
}

std::vector<CnfFormula> structured_formulas()
{
    // Clause j uses variables j, j+1, j+2 (mod N); every sign pattern of the
    // whole formula is taken for M <= 3, and a fixed stride of them for M = 4.
    std::vector<CnfFormula> out;
    for (int nv = 1; nv <= 4; ++nv)
        for (int nc = 0; nc <= 4; ++nc) {
            int patterns = 1 << (3 * nc);
            int stride = nc == 4 ? 37 : 1;
            for (int p = 0; p < patterns; p += stride) {
                CnfFormula f;
                f.num_vars = nv;
                for (int j = 0; j < nc; ++j) {
                    std::array<int, 3> c{};
                    for (int k = 0; k < 3; ++k) {
                        int var = (j + k) % nv + 1;
                        c[k] = ((p >> (3 * j + k)) & 1) ? -var : var;
                    }
                    f.clauses.push_back(c);
                }
                out.push_back(f);
            }
        }
    return out;
}

Verdict equisatisfiability()
{
    auto formulas = structured_formulas();
    int structured = static_cast<int>(formulas.size());
    Rng rng(606);
    for (int i = 0; i < 100; ++i)
        formulas.push_back(random_cnf(rng, 1 + pick(rng, 4), 1 + pick(rng, 4)));
    int bad = 0, count_bad = 0, dirty = 0, sat = 0, decode_bad = 0;
    for (const auto& f : formulas) {
        auto g = gen_convexfat_3sat(f);
        auto n = static_cast<std::size_t>(7 * f.num_vars + 16 * static_cast<int>(f.clauses.size()));
        count_bad += g.scene.size() != n || static_cast<std::size_t>(g.instance.size()) != n;
        dirty += ! geometry_audit(g.scene, g.instance.graph).clean();
        bool truth = brute_sat(f);
        sat += truth;
        auto r = solve_bruteforce(g.instance);
        bad += r.yes() != truth;
        if (r.yes()) {
            auto a = decode_assignment(f, r.witness);
            for (const auto& c : f.clauses)
                decode_bad += std::none_of(c.begin(), c.end(), [&](int lit) { return lit > 0 ? a[lit] : ! a[-lit]; });
        }
    }
    auto h = target_h5();
    int templates = 0;
    for (const auto& t : {variable_template(), clause_template(), connector_template()})
        templates += verify_gadget_contract(t, h);
    templates += verify_gadget_contract(mchom_vertex_template(), reflexive_c4());
    std::ostringstream d;
    d << formulas.size() << " formulas (" << structured << " structured, " << sat << " satisfiable): " << bad
      << " disagreements, " << decode_bad << " bad decodes, " << count_bad << " count mismatches, " << dirty
      << " dirty audits; " << templates << "/4 templates pass";
    return {bad == 0 && decode_bad == 0 && count_bad == 0 && dirty == 0 && templates == 4, d.str()};
}

Verdict weighted()
{
    Rng rng(707);
    int vc_bad = 0, cut_bad = 0, transfer_bad = 0, mchom_bad = 0, mchom_count_bad = 0, mchom_runs = 0;
    for (int i = 0; i < 200; ++i) {
        int n = 1 + pick(rng, 8);
        auto g = random_graph(rng, n, 15 + pick(rng, 60));
        int vc = brute_vertex_cover(g);

        auto w = encode_vertex_cover(g);
        auto r = solve_mincost(w.graph, w.target, w.costs);
        vc_bad += ! r.cost || *r.cost != vc;

        std::map<std::pair<int, int>, Rational> weights;
        Rational total = 0;
        for (auto e : g.edges())
            total += weights[e] = Rational(1 + pick(rng, 4), 1 + pick(rng, 2));
        auto c = encode_max_cut(g, weights);
        auto cr = solve_whom(c.graph, c.target, c.costs);
        cut_bad += ! cr.cost || total - *cr.cost != brute_max_cut(g, weights);

        if (i % 4 == 0) {
            ++mchom_runs;
            auto yes = gen_mchom_vc_triangles(g, vc);
            mchom_count_bad += yes.scene.size() != static_cast<std::size_t>(4 * n) + g.num_edges();
            mchom_bad += solve_mincost(yes.graph, yes.target, yes.costs, {}, {}, yes.costs.budget).answer != Answer::yes;
            if (vc > 0) {
                auto no = gen_mchom_vc_triangles(g, vc - 1);
                mchom_bad += solve_mincost(no.graph, no.target, no.costs, {}, {}, no.costs.budget).answer != Answer::no;
            }
        }

        if (n <= 7) {
            auto h = random_target(rng, 1 + pick(rng, 3), 50, 60);
            int k = h.size();
            auto costs = zero_costs(n, k);
            for (auto& row : costs.vcost)
                for (auto& q : row)
                    q = pick(rng, 5);
            for (auto [u, v] : g.edges())
                for (int a = 0; a < k; ++a)
                    for (int b = a; b < k; ++b)
                        costs.set_edge_cost(u, v, a, b, Rational(pick(rng, 7), 2), k);
            Assignment colored(n, unassigned);
            for (int v = 0; v < n; ++v)
                if (coin(rng, 40))
                    colored[v] = pick(rng, k);
            auto t = transfer_edge_costs(g, costs, colored, k);
            // Exhaustive over every extension of the colored set.
            std::size_t rest = t.vertex_map.size();
            Assignment ext(rest, 0);
            while (true) {
                Assignment full = colored;
                for (std::size_t j = 0; j < rest; ++j)
                    full[t.vertex_map[j]] = ext[j];
                transfer_bad += total_cost(g, costs, full) != t.offset + total_cost(t.graph, t.costs, ext);
                std::size_t j = 0;
                while (j < rest && ++ext[j] == k)
                    ext[j++] = 0;
                if (j == rest)
                    break;
            }
        }
    }
    std::ostringstream d;
    d << "200 graphs: vc " << vc_bad << ", maxcut " << cut_bad << ", transfer " << transfer_bad << " errors; mchom "
      << mchom_bad << " wrong decisions and " << mchom_count_bad << " count mismatches over " << mchom_runs << " graphs";
    return {vc_bad + cut_bad + transfer_bad + mchom_bad + mchom_count_bad == 0, d.str()};
}

// Three rows of jittered radius-3/4 disks with planted lists, plus a bridge
// disk with the full list and a triangle of disks whose lists {3,4,5} admit no
// homomorphism. Arc consistency cannot see the contradiction.
void write_scaling_corpus(const fs::path& dir)
{
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto h = std::make_shared<const TargetGraph>(target_h5());
    write_file((dir / "target.h").string(), format_target(*h));
    const int rows = 3;
    for (int n : {40, 80, 160, 320})
        for (int rep = 0; rep < 3; ++rep) {
            Rng rng(1000 * n + rep);
            int core = n - 4;
            auto scene = strip_scene(rng, core, rows);
            Rational x = Rational(6 * ((core - 1) / rows), 5) + Rational(13, 10);
            scene.objects.push_back(disk(x, 0, Rational(3, 4)));
            x += Rational(13, 10);
            scene.objects.push_back(disk(x, 0, Rational(3, 4)));
            scene.objects.push_back(disk(x + Rational(3, 5), Rational(9, 10), Rational(3, 4)));
            scene.objects.push_back(disk(x + Rational(6, 5), 0, Rational(3, 4)));
            auto g = intersection_graph(scene);
            std::vector<int> keep(core);
            for (int v = 0; v < core; ++v)
                keep[v] = v;
            auto f = planted_map(rng, induced_subgraph(g, keep), *h, 30);
            std::vector<ColorSet> lists(n);
            for (int v = 0; v < core; ++v) {
                lists[v] = color_bit(f[v]);
                for (int k = 0; k < 2; ++k)
                    lists[v] |= color_bit(pick(rng, 5));
            }
            lists[core] = h->all();
            for (int v = core + 1; v < n; ++v)
                lists[v] = color_bit(2) | color_bit(3) | color_bit(4);
            char stem[32];
            std::snprintf(stem, sizeof stem, "strip_%03d_%d", n, rep);
            auto file = instance_file(make_instance(h, g, lists));
            file.scene_path = std::string(stem) + ".scene";
            write_file((dir / *file.scene_path).string(), format_scene(scene));
            write_file((dir / (std::string(stem) + ".inst")).string(), format_instance(file, *h));
        }
}

struct Fit {
    std::vector<double> consecutive;
    double least_squares = 0;
};

Fit fit_log2(const std::map<int, std::vector<double>>& nodes)
{
    std::vector<std::pair<double, double>> pts;
    for (const auto& [n, v] : nodes) {
        double s = 0;
        for (double x : v)
            s += std::log2(std::max(x, 1.0));
        pts.emplace_back(n, s / static_cast<double>(v.size()));
    }
    Fit f;
    for (std::size_t i = 1; i < pts.size(); ++i)
        f.consecutive.push_back((pts[i].second - pts[i - 1].second) / (pts[i].first - pts[i - 1].first));
    double mx = 0, my = 0;
    for (auto [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0, sxx = 0;
    for (auto [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    f.least_squares = sxy / sxx;
    return f;
}

RunConfig scaling_config(int jobs)
{
    RunConfig cfg;
    cfg.node_limit = 2000000;
    cfg.jobs = jobs;
    return cfg;
}

Verdict scaling(const fs::path& dir, std::string& report)
{
    write_scaling_corpus(dir);
    report = bench(dir.string(), {Method::fat, Method::brute}, scaling_config(1), true);
    write_file((dir / "bench.csv").string(), report);

    std::map<int, std::vector<double>> fat, brute;
    std::map<std::string, std::string> fat_answer;
    int bad = 0, timeouts = 0;
    std::istringstream in(report);
    std::string row;
    std::getline(in, row);
    while (std::getline(in, row)) {
        std::vector<std::string> col;
        std::stringstream ss(row);
        for (std::string c; std::getline(ss, c, ',');)
            col.push_back(c);
        int n = std::stoi(col[1]);
        double nodes = std::stod(col[6]);
        if (col[4] == "fat") {
            fat[n].push_back(nodes);
            fat_answer[col[0]] = col[7];
            bad += col[7] != "NO";
        }
        else {
            brute[n].push_back(nodes);
            timeouts += col[7] == "TIMEOUT";
            bad += col[7] != "TIMEOUT" && col[7] != fat_answer[col[0]];
        }
    }
    auto ff = fit_log2(fat);
    bool slower = ff.least_squares < 0.5 && std::all_of(ff.consecutive.begin(), ff.consecutive.end(), [](double s) { return s < 0.5; });
    std::ostringstream d;
    d.precision(3);
    d << "n in {40,80,160,320} x 3; log2 fat-node slope per vertex: consecutive";
    for (double s : ff.consecutive)
        d << " " << s;
    d << ", least squares " << ff.least_squares << " (< 0.5); brute baseline max nodes per size";
    for (const auto& [n, v] : brute)
        d << " " << *std::max_element(v.begin(), v.end());
    d << ", " << timeouts << "/12 at the 2e6 node cap; " << bad << " wrong answers";
    return {slower && bad == 0, d.str()};
}

std::string run_suite(const fs::path& out, std::string& scaling_report)
{
    auto corpus = make_corpus(101, 1000);
    std::string text;
    text += line_for(1, oracle_equivalence(corpus));
    text += line_for(2, preprocessing(corpus));
    text += line_for(3, clique_colorings(corpus));
    text += line_for(4, line_separators());
    text += line_for(5, rc_pipeline(corpus));
    text += line_for(6, equisatisfiability());
    text += line_for(7, weighted());
    text += line_for(8, scaling(out / "scaling", scaling_report));
    return text;
}

int cli_bench(const fs::path& dir, int jobs, const fs::path& csv)
{
    std::string cmd = std::string("'") + GEOHOM_CLI + "' bench '" + dir.string() + "' --methods fat,brute --omit-time --node-limit 2000000 --jobs " +
        std::to_string(jobs) + " -o '" + csv.string() + "' >/dev/null 2>&1";
    return std::system(cmd.c_str());
}

}

int main()
{
    fs::path out = fs::current_path() / "acceptance_out";
    fs::create_directories(out);
    std::string first_scaling, second_scaling;
    std::string first = run_suite(out, first_scaling);
    std::cout << first << std::flush;

    std::string second = run_suite(out, second_scaling);
    std::string parallel = bench((out / "scaling").string(), {Method::fat, Method::brute}, scaling_config(4), true);
    bool cli_ok = cli_bench(out / "scaling", 1, out / "cli_1.csv") == 0 && cli_bench(out / "scaling", 4, out / "cli_4.csv") == 0;
    std::string cli_1 = cli_ok ? read_file((out / "cli_1.csv").string()) : "";
    std::string cli_4 = cli_ok ? read_file((out / "cli_4.csv").string()) : "";
    write_file((out / "report.txt").string(), first);

    Verdict det;
    det.pass = first == second && first_scaling == second_scaling && parallel == first_scaling && cli_ok && cli_1 == first_scaling &&
        cli_4 == first_scaling;
    det.detail = std::string("suite rerun ") + (first == second ? "identical" : "differs") + ", bench jobs=4 " +
        (parallel == first_scaling ? "identical" : "differs") + ", CLI bench jobs=1/4 " +
        (cli_ok && cli_1 == first_scaling && cli_4 == first_scaling ? "identical" : "differs") + " (" +
        std::to_string(first.size() + first_scaling.size()) + " bytes compared)";
    std::cout << line_for(9, det);

    bool all = det.pass && first.find("FAIL") == std::string::npos;
    return all ? 0 : 1;
}
