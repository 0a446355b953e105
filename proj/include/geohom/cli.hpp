#pragma once

#include "geohom/formats.hpp"
#include "geohom/instance.hpp"
#include "geohom/weighted.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace geohom {

enum class Method { automatic, brute, string, cliquebased, fat, twosat, mincost, whom };

std::string to_string(Method m);
// Throws ParseError on an unknown name.
Method parse_method(std::string_view name);

struct RunConfig {
    Method method = Method::automatic;
    double deg_exponent = 1.0 / 3.0;
    Rational c_area{9};
    int base_n = 12;
    Rational delta{2, 3};
    Rational size_budget{4};
    Rational r_max{1};
    std::uint64_t seed = 1;
    int jobs = 1;
    double time_limit = 0;
    std::uint64_t node_limit = 0;

    // Throws PreconditionError on a nonpositive field.
    void validate() const;
    SolveConfig solve_config() const;
};

// Overlays a JSON object with any of the RunConfig keys; rationals may be
// integers or "p/q" strings.
void apply_config_json(RunConfig& cfg, std::string_view json_text);
// GEOHOM_SEED, when set, replaces cfg.seed.
void apply_env_seed(RunConfig& cfg);

struct Problem {
    std::shared_ptr<const TargetGraph> target;
    ListInstance instance;
    std::optional<CostTables> costs;
    std::optional<Scene> scene;
};

// Parses H, the instance and its bound scene (resolved against the instance's
// directory unless scene_override is given). The scene's intersection graph
// must equal the declared edges.
Problem load_problem(const std::string& target_path, const std::string& instance_path, const std::optional<std::string>& scene_override = {});

Method auto_select(const Problem& p, const RunConfig& cfg);

struct RunOutcome {
    Method method = Method::automatic;
    Answer answer = Answer::no;
    Assignment witness;
    std::optional<Rational> cost;
    SolveStats stats;
    double seconds = 0;
};

// Runs the configured (or auto-selected) method. Every YES witness is
// checked against the instance before it is returned.
RunOutcome run(const Problem& p, const RunConfig& cfg);

struct BenchRecord {
    std::string instance;
    int n = 0;
    std::size_t m = 0;
    std::optional<std::int64_t> area;
    std::string method;
    double wall_ms = 0;
    std::uint64_t nodes = 0;
    // YES, NO, TIMEOUT or ERROR
    std::string answer;
};

std::string bench_header();
// With omit_time the wall column is written as "-".
std::string format_record(const BenchRecord& r, bool omit_time);

BenchRecord make_record(const std::string& id, const Problem& p, const RunOutcome& o);

// One row per (instance, method), instances in name order. Each *.inst file
// uses <stem>.h beside it, else target.h in the directory. Per-instance
// failures become ERROR rows.
std::string bench(const std::string& dir, const std::vector<Method>& methods, const RunConfig& cfg, bool omit_time);

}
