#include "geohom/cli.hpp"

#include "geohom/errors.hpp"
#include "geohom/fat_solver.hpp"
#include "geohom/solver.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <thread>

namespace geohom {

namespace fs = std::filesystem;

namespace {

const std::pair<Method, const char*> method_names[] = {
    {Method::automatic, "auto"},
    {Method::brute, "brute"},
    {Method::string, "string"},
    {Method::cliquebased, "cliquebased"},
    {Method::fat, "fat"},
    {Method::twosat, "twosat"},
    {Method::mincost, "mincost"},
    {Method::whom, "whom"},
};

}

std::string to_string(Method m)
{
    for (auto [k, name] : method_names)
        if (k == m)
            return name;
    return "?";
}

Method parse_method(std::string_view name)
{
    for (auto [k, n] : method_names)
        if (name == n)
            return k;
    throw ParseError("unknown method '" + std::string(name) + "'");
}

void RunConfig::validate() const
{
    if (! (deg_exponent > 0))
        throw PreconditionError("deg_exponent must be positive");
    if (c_area < 1)
        throw PreconditionError("c_area must be at least 1");
    if (base_n <= 0)
        throw PreconditionError("base_n must be positive");
    if (delta <= 0 || delta >= 1)
        throw PreconditionError("delta must lie in (0, 1)");
    if (size_budget <= 0)
        throw PreconditionError("size_budget must be positive");
    if (r_max <= 0)
        throw PreconditionError("r_max must be positive");
    if (seed == 0)
        throw PreconditionError("seed must be positive");
    if (jobs <= 0)
        throw PreconditionError("jobs must be positive");
    if (time_limit < 0)
        throw PreconditionError("time_limit must be nonnegative");
}

SolveConfig RunConfig::solve_config() const
{
    SolveConfig s;
    s.deg_exponent = deg_exponent;
    s.base_n = base_n;
    s.delta = delta;
    s.size_budget_factor = size_budget;
    s.c_area = c_area;
    s.r_max = r_max;
    s.seed = seed;
    s.node_limit = node_limit;
    s.time_limit = time_limit;
    return s;
}

void apply_config_json(RunConfig& cfg, std::string_view json_text)
{
    using nlohmann::json;
    json j;
    try {
        j = json::parse(json_text);
    }
    catch (const json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    if (! j.is_object())
        throw ParseError("config: expected a JSON object");
    auto rational = [](const json& v, const std::string& key) {
        if (v.is_number_integer())
            return Rational(v.get<long long>());
        if (v.is_string())
            return parse_rational(v.get<std::string>());
        throw ParseError("config: '" + key + "' must be an integer or a \"p/q\" string");
    };
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "method")
                cfg.method = parse_method(v.get<std::string>());
            else if (key == "deg_exponent")
                cfg.deg_exponent = v.get<double>();
            else if (key == "c_area")
                cfg.c_area = rational(v, key);
            else if (key == "base_n")
                cfg.base_n = v.get<int>();
            else if (key == "delta")
                cfg.delta = rational(v, key);
            else if (key == "size_budget")
                cfg.size_budget = rational(v, key);
            else if (key == "r_max")
                cfg.r_max = rational(v, key);
            else if (key == "seed")
                cfg.seed = v.get<std::uint64_t>();
            else if (key == "jobs")
                cfg.jobs = v.get<int>();
            else if (key == "time_limit")
                cfg.time_limit = v.get<double>();
            else if (key == "node_limit")
                cfg.node_limit = v.get<std::uint64_t>();
            else
                throw ParseError("config: unknown key '" + key + "'");
        }
    }
    catch (const json::type_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
}

void apply_env_seed(RunConfig& cfg)
{
    const char* env = std::getenv("GEOHOM_SEED");
    if (! env || ! *env)
        return;
    std::string s(env);
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used);
    }
    catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s[0] == '-')
        throw ParseError("GEOHOM_SEED must be a positive integer");
    cfg.seed = v;
}

Problem load_problem(const std::string& target_path, const std::string& instance_path, const std::optional<std::string>& scene_override)
{
    Problem p;
    p.target = std::make_shared<const TargetGraph>(parse_target(read_file(target_path)));
    auto file = parse_instance(read_file(instance_path), *p.target);
    p.instance = to_list_instance(file, p.target);
    p.costs = file.costs;
    std::optional<std::string> scene_path = scene_override;
    if (! scene_path && file.scene_path) {
        fs::path sp(*file.scene_path);
        if (sp.is_relative())
            sp = fs::path(instance_path).parent_path() / sp;
        scene_path = sp.string();
    }
    if (scene_path) {
        p.scene = parse_scene(read_file(*scene_path));
        if (static_cast<int>(p.scene->size()) != p.instance.size())
            throw ParseError("scene has " + std::to_string(p.scene->size()) + " objects but the instance has " +
                std::to_string(p.instance.size()) + " vertices");
        if (! (intersection_graph(*p.scene) == p.instance.graph))
            throw ParseError("scene intersection graph differs from the declared edges");
    }
    return p;
}

namespace {

int mrc_or_large(const TargetGraph& h)
{
    try {
        return max_reflexive_clique(h).size;
    }
    catch (const PreconditionError&) {
        int best = 0;
        for (ColorSet c : maximal_reflexive_cliques(h))
            best = std::max(best, color_count(c));
        return best;
    }
}

SeparatorProvider provider_for(const Problem& p, const RunConfig& cfg)
{
    if (p.scene)
        return scene_separator_provider(*p.scene, cfg.delta);
    return fallback_separator_provider(cfg.delta, cfg.size_budget, cfg.seed);
}

}

Method auto_select(const Problem& p, const RunConfig& cfg)
{
    if (p.costs)
        return p.costs->ecost ? Method::whom : Method::mincost;
    const auto& inst = p.instance;
    if (std::all_of(inst.lists.begin(), inst.lists.end(), [](ColorSet s) { return color_count(s) <= 2; }))
        return Method::twosat;
    int mrc = mrc_or_large(inst.h());
    if (p.scene && mrc <= 2 && validate_fat_similarly_sized(*p.scene, cfg.r_max).ok())
        return Method::fat;
    if (p.scene && mrc <= 1)
        return Method::cliquebased;
    if (! find_predator(inst.h()))
        return Method::string;
    return Method::brute;
}

RunOutcome run(const Problem& p, const RunConfig& cfg)
{
    cfg.validate();
    RunOutcome out;
    out.method = cfg.method == Method::automatic ? auto_select(p, cfg) : cfg.method;
    SolveConfig sc = cfg.solve_config();
    auto start = std::chrono::steady_clock::now();
    auto take = [&](const SolveResult& r) {
        out.answer = r.answer;
        out.witness = r.witness;
        out.stats = r.stats;
    };
    switch (out.method) {
    case Method::brute:
        take(solve_bruteforce(p.instance, sc));
        break;
    case Method::twosat:
        take(solve_2sat(p.instance, sc));
        break;
    case Method::string:
        take(solve_string(p.instance, sc));
        break;
    case Method::cliquebased:
        take(solve_cliquebased(p.instance, provider_for(p, cfg), sc));
        break;
    case Method::fat:
        if (! p.scene)
            throw PreconditionError("method fat needs a scene");
        take(solve_fat(p.instance, *p.scene, sc));
        break;
    case Method::mincost:
    case Method::whom: {
        CostTables costs = p.costs ? *p.costs : zero_costs(p.instance.size(), p.instance.h().size());
        auto r = out.method == Method::mincost ? solve_mincost(p.instance, costs, provider_for(p, cfg), sc, costs.budget)
                                               : solve_whom(p.instance, costs, provider_for(p, cfg), sc, costs.budget);
        out.answer = r.answer;
        out.witness = r.witness;
        out.cost = r.cost;
        out.stats = r.stats;
        break;
    }
    case Method::automatic:
        break;
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.answer == Answer::yes && ! verify_homomorphism(p.instance, out.witness))
        throw Error("internal error: witness failed verification");
    return out;
}

std::string bench_header() { return "instance,n,m,area,method,wall_ms,nodes,answer\n"; }

std::string format_record(const BenchRecord& r, bool omit_time)
{
    std::ostringstream out;
    out << r.instance << ',' << r.n << ',' << r.m << ',';
    if (r.area)
        out << *r.area;
    out << ',' << r.method << ',';
    if (omit_time)
        out << '-';
    else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms);
        out << buf;
    }
    out << ',' << r.nodes << ',' << r.answer << '\n';
    return out.str();
}

BenchRecord make_record(const std::string& id, const Problem& p, const RunOutcome& o)
{
    BenchRecord r;
    r.instance = id;
    r.n = p.instance.size();
    r.m = p.instance.graph.edges().size();
    if (p.scene && p.scene->size() > 0)
        r.area = area(*p.scene);
    r.method = to_string(o.method);
    r.wall_ms = o.seconds * 1000;
    r.nodes = o.stats.nodes;
    r.answer = to_string(o.answer);
    return r;
}

std::string bench(const std::string& dir, const std::vector<Method>& methods, const RunConfig& cfg, bool omit_time)
{
    cfg.validate();
    if (! fs::is_directory(dir))
        throw Error("'" + dir + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".inst")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    struct Task {
        std::size_t file;
        Method method;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < files.size(); ++i)
        for (Method m : methods)
            tasks.push_back({i, m});
    std::vector<std::string> rows(tasks.size());

    auto work = [&](std::size_t t) {
        const fs::path& file = files[tasks[t].file];
        std::string id = file.stem().string();
        RunConfig local = cfg;
        local.method = tasks[t].method;
        BenchRecord rec;
        rec.instance = id;
        rec.method = to_string(tasks[t].method);
        std::optional<Problem> p;
        try {
            fs::path h = file.parent_path() / (id + ".h");
            if (! fs::exists(h))
                h = file.parent_path() / "target.h";
            p = load_problem(h.string(), file.string());
            rec = make_record(id, *p, run(*p, local));
            if (local.method == Method::automatic)
                rec.method = "auto:" + rec.method;
        }
        catch (const std::exception&) {
            if (p) {
                rec.n = p->instance.size();
                rec.m = p->instance.graph.edges().size();
            }
            rec.answer = "ERROR";
        }
        rows[t] = format_record(rec, omit_time);
    };

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();)
            work(t);
    };
    int threads = std::min<int>(cfg.jobs, static_cast<int>(tasks.size()));
    if (threads <= 1)
        worker();
    else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    std::string out = bench_header();
    for (const auto& r : rows)
        out += r;
    return out;
}

}
