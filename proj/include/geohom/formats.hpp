#pragma once

#include "geohom/generators.hpp"
#include "geohom/geometry.hpp"
#include "geohom/instance.hpp"
#include "geohom/target_graph.hpp"
#include "geohom/weighted.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace geohom {

// All parsers skip blank lines and lines starting with '#', and throw
// ParseError with a line number. Formatters emit the canonical form, so
// format(parse(format(x))) == format(x).

// H <n> / v <label> / e <label> <label>
TargetGraph parse_target(std::string_view text);
std::string format_target(const TargetGraph& h);

// disk / seg / tri / poly / pline, one object per line.
Scene parse_scene(std::string_view text);
std::string format_scene(const Scene& s);

struct InstanceFile {
    Graph graph;
    // Vertices without an l line get the full list.
    std::vector<ColorSet> lists;
    std::vector<bool> has_list;
    // Present when any wv, we or budget line appears.
    std::optional<CostTables> costs;
    std::optional<std::string> scene_path;
};

// G <n> / e i j / l i labels... / wv i c q / we i j c d q / budget q / scene path
InstanceFile parse_instance(std::string_view text, const TargetGraph& h);
std::string format_instance(const InstanceFile& f, const TargetGraph& h);

InstanceFile instance_file(const ListInstance& inst);
ListInstance to_list_instance(const InstanceFile& f, std::shared_ptr<const TargetGraph> h);

// Just the G and e lines of the instance format.
Graph parse_graph(std::string_view text);
std::string format_graph(const Graph& g);

std::string format_dimacs(const CnfFormula& f);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}
