#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "empathica/dynamics.hpp"
#include "empathica/equilibria.hpp"
#include "empathica/ess.hpp"
#include "empathica/game.hpp"
#include "empathica/hierarchy.hpp"

namespace empathica::io {

using Json = nlohmann::json;

struct GameDocument {
  Game2x2 game;
  EmpathyMatrix lambda = EmpathyMatrix::identity();
};

// {"A": [[a11,a12],[a21,a22]], "B": [[...]], "Lambda": [[...]]}; Lambda is
// optional and defaults to the identity. Throws ParseError.
GameDocument parse_game(const std::string& text);
GameDocument load_game(const std::string& path);

Json to_json(const Matrix2& m);
Json to_json(const GameDocument& doc);
Json to_json(const GameClass& c);
Json to_json(const EquilibriumSet& eq);
Json to_json(const EssResult& r);
Json to_json(const Constraint& c);
Json to_json(const TrajectoryDiagnostics& d);
Json to_json(const ConsistencyVerdict& v);
Json to_json(const SpectralLimit& s);

// Shortest decimal string that parses back to the same double.
std::string format_number(double v);

// Columns l12,l21,label; l21 outer, l12 inner.
void write_region_csv(std::ostream& out, const RegionMap& map);
// Columns t,p1,p2.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
// Columns p1,p2,dp1,dp2.
void write_field_csv(std::ostream& out, const std::vector<FieldSample>& field);
// Columns k,l11_k,l12_k,l21_k,l22_k,eq_signature.
void write_hierarchy_csv(std::ostream& out, const HierarchyAnalysis& analysis);

// Arrows on the unit square (p1 horizontal, p2 vertical) with optional
// trajectories drawn on top.
std::string phase_portrait_svg(const std::vector<FieldSample>& field, const std::vector<Trajectory>& trajectories = {});

}  // namespace empathica::io
