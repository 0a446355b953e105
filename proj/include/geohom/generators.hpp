#pragma once

#include "geohom/geometry.hpp"
#include "geohom/instance.hpp"
#include "geohom/target_graph.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace geohom {

struct CnfFormula {
    int num_vars = 0;
    // Signed 1-based literals, exactly three per clause.
    std::vector<std::array<int, 3>> clauses;
};

// Clauses shorter than three are padded by repeating their last literal.
CnfFormula parse_dimacs(std::string_view text);

enum class Contract {
    variable,     // projection on (x, y) is {(5,3), (3,5)}
    clause,       // extendable iff some z_j is 3
    connector,    // the two touched colors agree, within {3,5}
    mchom_vertex, // exactly two homomorphisms, x,y -> (1,4) or (2,3)
};

struct GadgetTemplate {
    std::string name;
    Scene fragment;
    // Color labels per triangle.
    std::vector<std::vector<std::string>> lists;
    std::vector<int> interface;
    Contract contract;
};

// C5 on 1..5 with loops on 1 and 2.
TargetGraph target_h5();

GadgetTemplate variable_template();
GadgetTemplate clause_template();
GadgetTemplate connector_template();

bool verify_gadget_contract(const GadgetTemplate& t, const TargetGraph& h);

struct GeneratedInstance {
    Scene scene;
    ListInstance instance;
};

GeneratedInstance gen_convexfat_3sat(const CnfFormula& f);

// Reads a witness of the generated instance back as a truth assignment
// (index 0 unused). A variable is true when its x triangle is colored 3.
std::vector<bool> decode_assignment(const CnfFormula& f, const Assignment& witness);

struct AuditReport {
    std::vector<std::pair<int, int>> missing; // declared, not in the scene
    std::vector<std::pair<int, int>> extra;   // in the scene, not declared
    bool clean() const { return missing.empty() && extra.empty(); }
};

AuditReport geometry_audit(const Scene& scene, const Graph& declared);

// Max over min of squared side lengths, minus one.
double equilateral_defect(const Triangle& t);

}
