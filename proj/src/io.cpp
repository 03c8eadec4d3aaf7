#include "empathica/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "empathica/error.hpp"

namespace empathica::io {

namespace {

Matrix2 parse_matrix(const Json& doc, const char* key) {
  const Json& m = doc.at(key);
  if (!m.is_array() || m.size() != 2) throw ParseError(std::string("'") + key + "' must be a 2x2 array");
  Matrix2 out{};
  for (std::size_t i = 0; i < 2; ++i) {
    if (!m[i].is_array() || m[i].size() != 2) throw ParseError(std::string("'") + key + "' must be a 2x2 array");
    for (std::size_t j = 0; j < 2; ++j) {
      if (!m[i][j].is_number()) throw ParseError(std::string("'") + key + "' entries must be numbers");
      out[i][j] = m[i][j].get<double>();
      if (!std::isfinite(out[i][j])) throw ParseError(std::string("'") + key + "' entries must be finite");
    }
  }
  return out;
}

}  // namespace

GameDocument parse_game(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("game document must be a JSON object");
  for (const char* key : {"A", "B"})
    if (!doc.contains(key)) throw ParseError(std::string("game document is missing '") + key + "'");

  GameDocument out;
  out.game.a = parse_matrix(doc, "A");
  out.game.b = parse_matrix(doc, "B");
  if (doc.contains("Lambda")) out.lambda = EmpathyMatrix::from_matrix(parse_matrix(doc, "Lambda"));
  return out;
}

GameDocument load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open game file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_game(buffer.str());
}

Json to_json(const Matrix2& m) { return Json::array({Json::array({m[0][0], m[0][1]}), Json::array({m[1][0], m[1][1]})}); }

Json to_json(const GameDocument& doc) {
  return Json{{"A", to_json(doc.game.a)}, {"B", to_json(doc.game.b)}, {"Lambda", to_json(doc.lambda.matrix())}};
}

namespace {

Json cells(const std::vector<JointAction>& actions) {
  Json out = Json::array();
  for (const JointAction& c : actions) out.push_back({c.row, c.col});
  return out;
}

Json profile(const MixedProfile& p) { return Json{{"x", p.x}, {"y", p.y}}; }

const char* shape_name(ComponentShape s) {
  switch (s) {
    case ComponentShape::Point: return "point";
    case ComponentShape::Segment: return "segment";
    case ComponentShape::Square: return "square";
  }
  return "point";
}

}  // namespace

Json to_json(const GameClass& c) {
  Json out{{"class", to_string(c.tag)}};
  out["row_dominant"] = c.row_dominant ? Json(*c.row_dominant) : Json(nullptr);
  out["col_dominant"] = c.col_dominant ? Json(*c.col_dominant) : Json(nullptr);
  out["ties"] = c.degenerate_ties;
  return out;
}

Json to_json(const EquilibriumSet& eq) {
  Json pure = Json::array();
  Json strict = Json::array();
  for (const PureEquilibrium& p : eq.pure) {
    pure.push_back({p.cell.row, p.cell.col});
    strict.push_back(p.strict);
  }
  Json mixed = Json::array();
  for (const MixedComponent& c : eq.mixed.components) {
    Json item{{"from", profile(c.first)}, {"to", profile(c.last)}, {"continuum", c.continuum()}, {"shape", shape_name(c.shape)}};
    mixed.push_back(std::move(item));
  }
  return Json{{"pure", pure},
              {"pure_strict", strict},
              {"mixed", mixed},
              {"degenerate", eq.mixed.degenerate},
              {"berge", cells(eq.berge)},
              {"pareto", cells(eq.pareto)}};
}

Json to_json(const Constraint& c) {
  return Json{{"c1", c.c1}, {"c2", c.c2}, {"V", c.V}, {"alpha", c.alpha}, {"type", to_string(c.type)},
              {"feasible", Json::array({c.lo, c.hi})}};
}

Json to_json(const EssResult& r) {
  Json points = Json::array();
  for (const EssPoint& p : r.points) points.push_back(Json{{"m", p.m}, {"kind", to_string(p.kind)}});
  return Json{{"exists", r.exists()}, {"status", r.status == EssStatus::Ok ? "Ok" : "NoEss"}, {"ess", points}};
}

Json to_json(const TrajectoryDiagnostics& d) {
  Json out{{"converged", d.converged}, {"cycle_detected", d.cycle_detected}};
  out["limit_point"] = d.limit_point ? Json::array({d.limit_point->p1(), d.limit_point->p2()}) : Json(nullptr);
  out["cycle_period_estimate"] = d.cycle_period_estimate ? Json(*d.cycle_period_estimate) : Json(nullptr);
  return out;
}

Json to_json(const ConsistencyVerdict& v) {
  Json out{{"verdict", to_string(v.summary())}, {"battery", to_string(v.battery)}};
  if (v.witness) {
    out["witness"] = Json{{"game_index", v.witness->game_index},
                          {"A", to_json(v.witness->game.a)},
                          {"B", to_json(v.witness->game.b)},
                          {"level", v.witness->level},
                          {"level_1_signature", v.witness->level_one_signature},
                          {"level_k_signature", v.witness->level_k_signature}};
  } else {
    out["witness"] = nullptr;
  }
  out["structural_epsilons"] = v.structural_epsilons ? Json(*v.structural_epsilons) : Json(nullptr);
  return out;
}

Json to_json(const SpectralLimit& s) {
  auto complex_json = [](std::complex<double> z) { return Json::array({z.real(), z.imag()}); };
  Json out{{"eigenvalues", Json::array({complex_json(s.eigenvalue1), complex_json(s.eigenvalue2)})},
           {"rho", s.rho},
           {"limit", to_string(s.limit)}};
  out["limit_matrix"] = s.limit_matrix ? to_json(*s.limit_matrix) : Json(nullptr);
  return out;
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), result.ptr);
}

void write_region_csv(std::ostream& out, const RegionMap& map) {
  out << "l12,l21,label\n";
  for (int r = 0; r < map.resolution; ++r)
    for (int c = 0; c < map.resolution; ++c)
      out << format_number(map.l12_values[static_cast<std::size_t>(c)]) << ','
          << format_number(map.l21_values[static_cast<std::size_t>(r)]) << ',' << map.label(c, r) << '\n';
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,p1,p2\n";
  for (std::size_t i = 0; i < traj.states.size(); ++i)
    out << traj.times[i] << ',' << format_number(traj.states[i].p1()) << ',' << format_number(traj.states[i].p2())
        << '\n';
}

void write_field_csv(std::ostream& out, const std::vector<FieldSample>& field) {
  out << "p1,p2,dp1,dp2\n";
  for (const FieldSample& f : field)
    out << format_number(f.p1) << ',' << format_number(f.p2) << ',' << format_number(f.dp1) << ','
        << format_number(f.dp2) << '\n';
}

void write_hierarchy_csv(std::ostream& out, const HierarchyAnalysis& analysis) {
  out << "k,l11_k,l12_k,l21_k,l22_k,eq_signature\n";
  for (const LevelReport& level : analysis.levels)
    out << level.k << ',' << format_number(level.power[0][0]) << ',' << format_number(level.power[0][1]) << ','
        << format_number(level.power[1][0]) << ',' << format_number(level.power[1][1]) << ',' << level.signature
        << '\n';
}

std::string phase_portrait_svg(const std::vector<FieldSample>& field, const std::vector<Trajectory>& trajectories) {
  constexpr double kSize = 500.0;
  constexpr double kMargin = 30.0;
  auto px = [](double p) { return kMargin + p * kSize; };
  auto py = [](double p) { return kMargin + (1.0 - p) * kSize; };

  double longest = 0.0;
  for (const FieldSample& f : field) longest = std::max(longest, std::hypot(f.dp1, f.dp2));
  const int per_axis = std::max(2, static_cast<int>(std::lround(std::sqrt(static_cast<double>(field.size())))));
  const double arrow = 0.8 * kSize / (per_axis - 1);

  std::ostringstream svg;
  const double extent = kSize + 2 * kMargin;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << extent << "\" height=\"" << extent << "\">\n";
  svg << "<defs><marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" orient=\"auto\">"
         "<path d=\"M0,0 L6,3 L0,6 z\" fill=\"#444\"/></marker></defs>\n";
  svg << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (const FieldSample& f : field) {
    const double norm = std::hypot(f.dp1, f.dp2);
    if (longest == 0.0 || norm == 0.0) continue;
    // Direction only, length scaled by relative speed.
    const double len = arrow * std::sqrt(norm / longest);
    const double x0 = px(f.p1), y0 = py(f.p2);
    const double x1 = x0 + len * f.dp1 / norm, y1 = y0 - len * f.dp2 / norm;
    svg << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y1
        << "\" stroke=\"#444\" stroke-width=\"1\" marker-end=\"url(#head)\"/>\n";
  }
  static constexpr std::array<const char*, 4> kColors{"#d62728", "#1f77b4", "#2ca02c", "#9467bd"};
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const auto& states = trajectories[i].states;
    const std::size_t stride = std::max<std::size_t>(1, states.size() / 2000);
    svg << "<polyline fill=\"none\" stroke=\"" << kColors[i % kColors.size()] << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < states.size(); k += stride) svg << px(states[k].p1()) << ',' << py(states[k].p2()) << ' ';
    svg << px(states.back().p1()) << ',' << py(states.back().p2()) << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace empathica::io
