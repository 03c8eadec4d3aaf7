#pragma once

#include <string>
#include <utility>
#include <vector>

#include "empathica/game.hpp"

namespace empathica {

// x: row player's probability on action 1; y: column player's probability on
// action 1.
struct MixedProfile {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const MixedProfile&, const MixedProfile&) = default;
};

struct PureEquilibrium {
  JointAction cell;
  bool strict = false;  // both best-response inequalities strict

  friend bool operator==(const PureEquilibrium&, const PureEquilibrium&) = default;
};

enum class ComponentShape { Point, Segment, Square };

// A connected piece of the mixed equilibrium set. Isolated profiles have
// first == last; continua are axis-aligned segments (endpoints given) or, for
// games where both players are everywhere indifferent, the whole square.
struct MixedComponent {
  MixedProfile first;
  MixedProfile last;
  ComponentShape shape = ComponentShape::Point;

  bool continuum() const { return shape != ComponentShape::Point; }
  bool interior() const;  // isolated point strictly inside (0,1)^2
};

struct MixedNash {
  std::vector<MixedComponent> components;
  // Both indifference denominators (a11-a21+a22-a12 and b11-b12+b22-b21) vanish.
  bool degenerate = false;

  std::size_t interior_count() const;
  bool has_continuum() const;
};

std::vector<PureEquilibrium> pure_nash(const Game2x2& g);

// Every equilibrium component that is not an isolated pure profile.
MixedNash mixed_nash(const Game2x2& g);

// Full equilibrium set as the intersection of the two best-response graphs,
// including isolated pure corners.
std::vector<MixedComponent> equilibrium_components(const Game2x2& g);

std::vector<JointAction> berge_solutions(const Game2x2& g);
std::vector<JointAction> pareto_front(const Game2x2& g);

// Expected payoffs of the two players at a mixed profile.
std::pair<double, double> expected_payoffs(const Game2x2& g, MixedProfile m);

// No pure deviation gains more than `tolerance` for either player. For 2x2
// games this is the variational inequality <m* - m, r(m*)> >= 0.
bool satisfies_variational_inequality(const Game2x2& g, MixedProfile m, double tolerance = 1e-10);

struct EquilibriumSet {
  std::vector<PureEquilibrium> pure;
  MixedNash mixed;
  std::vector<JointAction> berge;
  std::vector<JointAction> pareto;
};

EquilibriumSet solve(const Game2x2& g);

// Equilibria of transform(g, lam).
EquilibriumSet two_population_equilibria(const Game2x2& g, const EmpathyMatrix& lam);

// Canonical outcome label: pure cells joined with '+', then "mixed" when an
// isolated interior equilibrium exists and "continuum" when a continuum does.
// For example "22", "12+21+mixed", "mixed".
std::string outcome_label(const EquilibriumSet& eq);

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

struct RegionMap {
  Range l12_range;
  Range l21_range;
  int resolution = 0;
  std::vector<double> l12_values;
  std::vector<double> l21_values;
  // Row-major with l21 as the outer index.
  std::vector<std::string> labels;

  const std::string& label(int i12, int i21) const { return labels[static_cast<std::size_t>(i21 * resolution + i12)]; }
};

// Sweeps (l12, l21) on a resolution x resolution grid including both range
// endpoints, with l11 = l22 = 1. Cells are evaluated in parallel.
RegionMap region_map(const Game2x2& g, Range l12_range, Range l21_range, int resolution);

}  // namespace empathica
