/// JSON encoding of matrices, reps, walks and index values; walk specs for the command line.
#pragma once

#include "qwalk/lattice.hpp"
#include "qwalk/symmetry.hpp"
#include "qwalk/ti_walks.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace qwalk {

using json = nlohmann::json;

/// Rows of [re, im] pairs.
json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j);

json rep_to_json(const SymmetryRep& rep);
SymmetryRep rep_from_json(const json& j);

json index_to_json(const IndexValue& v);
json ti_to_json(const TIWalk& ti);
json lattice_to_json(const LatticeOperator& op);

/// Every floating point number rounded to 12 significant digits.
json round_numbers(const json& j);
/// Canonical text: sorted keys, rounded numbers, two space indent.
std::string dump_canonical(const json& j);

inline constexpr int kWalkSpecSchemaVersion = 1;

/// A parsed walk spec.  `ti` is set for translation invariant specs, `left`/`right` for joins;
/// `lattice` is built whenever the spec describes a finite system.
struct WalkSpec {
    std::string type;
    std::optional<TIWalk> ti;
    std::optional<TIWalk> left;
    std::optional<TIWalk> right;
    std::optional<LatticeWalk> lattice;
    Topology topology = Topology::Line;
    Boundary boundary = Boundary::Compress;
    int n_cells = 0;
};

TIWalk ti_from_json(const json& j);
WalkSpec parse_walk_spec(const json& j, const Tolerances& tol = {});
/// Same, with the size and boundary overridden where given.
WalkSpec parse_walk_spec(const json& j, std::optional<int> n_cells, std::optional<Boundary> boundary,
                         const Tolerances& tol = {});

Topology topology_from_string(const std::string& s);
Boundary boundary_from_string(const std::string& s);

}  // namespace qwalk
