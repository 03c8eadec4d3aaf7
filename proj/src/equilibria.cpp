#include "empathica/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "empathica/error.hpp"

namespace empathica {

bool MixedComponent::interior() const {
  return shape == ComponentShape::Point && first.x > 0.0 && first.x < 1.0 && first.y > 0.0 && first.y < 1.0;
}

std::size_t MixedNash::interior_count() const {
  return static_cast<std::size_t>(
      std::count_if(components.begin(), components.end(), [](const MixedComponent& c) { return c.interior(); }));
}

bool MixedNash::has_continuum() const {
  return std::any_of(components.begin(), components.end(), [](const MixedComponent& c) { return c.continuum(); });
}

std::vector<PureEquilibrium> pure_nash(const Game2x2& g) {
  std::vector<PureEquilibrium> out;
  for (const JointAction c : kAllJointActions) {
    const int i = c.row - 1, j = c.col - 1;
    const double row_gain = g.a[i][j] - g.a[1 - i][j];
    const double col_gain = g.b[i][j] - g.b[i][1 - j];
    if (row_gain >= 0 && col_gain >= 0) out.push_back({c, row_gain > 0 && col_gain > 0});
  }
  return out;
}

namespace {

// Closed axis-aligned box [x0,x1] x [y0,y1]; every piece of a best-response
// graph is a degenerate box (a point or a segment).
struct Box {
  double x0, x1, y0, y1;

  bool is_point() const { return x0 == x1 && y0 == y1; }
  bool contains(const Box& o) const { return x0 <= o.x0 && o.x1 <= x1 && y0 <= o.y0 && o.y1 <= y1; }
};

constexpr Box kSquare{0.0, 1.0, 0.0, 1.0};

struct BestResponseGraph {
  bool everywhere_indifferent = false;
  std::vector<Box> pieces;
};

// Graph of one player's best-response correspondence in (own, other)
// coordinates. `gain(t) = t * first - (1 - t) * second` is the advantage of
// own action 1 when the opponent puts mass t on action 1.
BestResponseGraph best_response_graph(double first, double second) {
  BestResponseGraph graph;
  if (first == 0.0 && second == 0.0) {
    graph.everywhere_indifferent = true;
    return graph;
  }
  // Pieces are stored as {own_lo, own_hi, other_lo, other_hi}.
  auto add_sign_run = [&](double lo, double hi, double sign) {
    if (lo > hi || sign == 0.0) return;
    const double own = sign > 0 ? 1.0 : 0.0;
    graph.pieces.push_back({own, own, lo, hi});
  };
  const double at_zero = -second;
  const double at_one = first;
  const double slope = first + second;
  if (slope == 0.0 || (at_zero > 0 && at_one > 0) || (at_zero < 0 && at_one < 0)) {
    add_sign_run(0.0, 1.0, at_one != 0.0 ? at_one : at_zero);
    return graph;
  }
  double root = second / slope;
  if (at_zero == 0.0) root = 0.0;
  if (at_one == 0.0) root = 1.0;
  add_sign_run(0.0, root, at_zero);
  add_sign_run(root, 1.0, at_one);
  graph.pieces.push_back({0.0, 1.0, root, root});
  return graph;
}

Box swap_axes(const Box& b) { return {b.y0, b.y1, b.x0, b.x1}; }

std::vector<Box> intersect(const BestResponseGraph& row, const BestResponseGraph& col) {
  // Row pieces are in (x, y) already; column pieces come as (y, x).
  std::vector<Box> row_boxes = row.everywhere_indifferent ? std::vector<Box>{kSquare} : row.pieces;
  std::vector<Box> col_boxes;
  if (col.everywhere_indifferent)
    col_boxes.push_back(kSquare);
  else
    for (const Box& b : col.pieces) col_boxes.push_back(swap_axes(b));

  std::vector<Box> out;
  for (const Box& r : row_boxes)
    for (const Box& c : col_boxes) {
      const Box b{std::max(r.x0, c.x0), std::min(r.x1, c.x1), std::max(r.y0, c.y0), std::min(r.y1, c.y1)};
      if (b.x0 <= b.x1 && b.y0 <= b.y1) out.push_back(b);
    }
  return out;
}

// Drops boxes contained in others and joins collinear overlapping segments.
std::vector<Box> normalize(std::vector<Box> boxes) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < boxes.size() && !changed; ++i)
      for (std::size_t j = 0; j < boxes.size() && !changed; ++j) {
        if (i == j) continue;
        const Box& a = boxes[i];
        const Box& b = boxes[j];
        if (a.contains(b)) {
          boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        } else if (a.x0 == a.x1 && b.x0 == b.x1 && a.x0 == b.x0 && a.y0 <= b.y1 && b.y0 <= a.y1) {
          boxes[i] = {a.x0, a.x1, std::min(a.y0, b.y0), std::max(a.y1, b.y1)};
          boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        } else if (a.y0 == a.y1 && b.y0 == b.y1 && a.y0 == b.y0 && a.x0 <= b.x1 && b.x0 <= a.x1) {
          boxes[i] = {std::min(a.x0, b.x0), std::max(a.x1, b.x1), a.y0, a.y1};
          boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        }
      }
  }
  std::sort(boxes.begin(), boxes.end(), [](const Box& a, const Box& b) {
    return std::tie(a.x0, a.y0, a.x1, a.y1) < std::tie(b.x0, b.y0, b.x1, b.y1);
  });
  return boxes;
}

MixedComponent to_component(const Box& b) {
  MixedComponent c;
  c.first = {b.x0, b.y0};
  c.last = {b.x1, b.y1};
  if (b.is_point())
    c.shape = ComponentShape::Point;
  else if (b.x0 != b.x1 && b.y0 != b.y1)
    c.shape = ComponentShape::Square;
  else
    c.shape = ComponentShape::Segment;
  return c;
}

bool is_corner(const MixedComponent& c) {
  return c.shape == ComponentShape::Point && (c.first.x == 0.0 || c.first.x == 1.0) &&
         (c.first.y == 0.0 || c.first.y == 1.0);
}

}  // namespace

std::vector<MixedComponent> equilibrium_components(const Game2x2& g) {
  const PayoffDifferences d = payoff_differences(g);
  const BestResponseGraph row = best_response_graph(d.row_first, d.row_second);
  const BestResponseGraph col = best_response_graph(d.col_first, d.col_second);
  std::vector<MixedComponent> out;
  for (const Box& b : normalize(intersect(row, col))) out.push_back(to_component(b));
  return out;
}

MixedNash mixed_nash(const Game2x2& g) {
  const PayoffDifferences d = payoff_differences(g);
  MixedNash out;
  out.degenerate = (d.row_first + d.row_second == 0.0) && (d.col_first + d.col_second == 0.0);
  for (const MixedComponent& c : equilibrium_components(g))
    if (!is_corner(c)) out.components.push_back(c);
  return out;
}

std::vector<JointAction> berge_solutions(const Game2x2& g) {
  std::vector<JointAction> out;
  for (const JointAction c : kAllJointActions) {
    const int i = c.row - 1, j = c.col - 1;
    // Row's payoff is maximal over the column player's choices and vice versa.
    const bool row_supported = g.a[i][j] >= g.a[i][1 - j];
    const bool col_supported = g.b[i][j] >= g.b[1 - i][j];
    if (row_supported && col_supported) out.push_back(c);
  }
  return out;
}

std::vector<JointAction> pareto_front(const Game2x2& g) {
  std::vector<JointAction> out;
  for (const JointAction c : kAllJointActions) {
    const double ra = g.row_payoff(c), rb = g.col_payoff(c);
    bool dominated = false;
    for (const JointAction o : kAllJointActions) {
      const double oa = g.row_payoff(o), ob = g.col_payoff(o);
      if (oa >= ra && ob >= rb && (oa > ra || ob > rb)) dominated = true;
    }
    if (!dominated) out.push_back(c);
  }
  return out;
}

std::pair<double, double> expected_payoffs(const Game2x2& g, MixedProfile m) {
  const double px[2] = {m.x, 1.0 - m.x};
  const double py[2] = {m.y, 1.0 - m.y};
  double ra = 0.0, rb = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      ra += px[i] * py[j] * g.a[i][j];
      rb += px[i] * py[j] * g.b[i][j];
    }
  return {ra, rb};
}

bool satisfies_variational_inequality(const Game2x2& g, MixedProfile m, double tolerance) {
  const auto [ra, rb] = expected_payoffs(g, m);
  for (double x : {0.0, 1.0})
    if (expected_payoffs(g, {x, m.y}).first > ra + tolerance) return false;
  for (double y : {0.0, 1.0})
    if (expected_payoffs(g, {m.x, y}).second > rb + tolerance) return false;
  return true;
}

EquilibriumSet solve(const Game2x2& g) {
  return {pure_nash(g), mixed_nash(g), berge_solutions(g), pareto_front(g)};
}

EquilibriumSet two_population_equilibria(const Game2x2& g, const EmpathyMatrix& lam) {
  return solve(transform(g, lam));
}

std::string outcome_label(const EquilibriumSet& eq) {
  std::string label;
  auto append = [&label](const std::string& part) {
    if (!label.empty()) label += '+';
    label += part;
  };
  for (const PureEquilibrium& p : eq.pure) append(p.cell.label());
  if (eq.mixed.interior_count() > 0) append("mixed");
  if (eq.mixed.has_continuum()) append("continuum");
  return label;
}

RegionMap region_map(const Game2x2& g, Range l12_range, Range l21_range, int resolution) {
  if (resolution < 2) throw PreconditionError("region map resolution must be at least 2");
  for (double v : {l12_range.lo, l12_range.hi, l21_range.lo, l21_range.hi})
    if (!std::isfinite(v)) throw PreconditionError("region map ranges must be finite");

  RegionMap map;
  map.l12_range = l12_range;
  map.l21_range = l21_range;
  map.resolution = resolution;
  auto grid = [resolution](Range r) {
    std::vector<double> v(static_cast<std::size_t>(resolution));
    for (int i = 0; i < resolution; ++i) v[static_cast<std::size_t>(i)] = r.lo + (r.hi - r.lo) * i / (resolution - 1);
    return v;
  };
  map.l12_values = grid(l12_range);
  map.l21_values = grid(l21_range);
  map.labels.resize(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));

  // Each worker owns a disjoint set of l21 rows, so the merged output does not
  // depend on scheduling.
  auto fill_rows = [&](int first_row, int stride) {
    for (int r = first_row; r < resolution; r += stride)
      for (int c = 0; c < resolution; ++c) {
        const EmpathyMatrix lam{1.0, map.l12_values[static_cast<std::size_t>(c)],
                                map.l21_values[static_cast<std::size_t>(r)], 1.0};
        map.labels[static_cast<std::size_t>(r * resolution + c)] =
            outcome_label(two_population_equilibria(g, lam));
      }
  };
  const int workers = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, 8);
  std::vector<std::future<void>> jobs;
  for (int w = 0; w < workers; ++w) jobs.push_back(std::async(std::launch::async, fill_rows, w, workers));
  for (auto& j : jobs) j.get();
  return map;
}

}  // namespace empathica
