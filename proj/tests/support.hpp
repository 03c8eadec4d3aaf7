#pragma once

// Random generators and brute-force oracles shared by the test suites. The
// oracles deliberately avoid the library's own solvers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "empathica/game.hpp"

namespace empathica::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin() { return integer(0, 1) == 1; }

  Game2x2 game(double lo = -5.0, double hi = 5.0) {
    Game2x2 g;
    for (auto* m : {&g.a, &g.b})
      for (auto& row : *m)
        for (double& v : row) v = uniform(lo, hi);
    return g;
  }

  // Small integer payoffs, so that ties show up often.
  Game2x2 integer_game(int lo = -2, int hi = 2) {
    Game2x2 g;
    for (auto* m : {&g.a, &g.b})
      for (auto& row : *m)
        for (double& v : row) v = integer(lo, hi);
    return g;
  }

  EmpathyMatrix lambda(double lo = -2.0, double hi = 2.0) {
    return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)};
  }

  // Symmetric prisoner's dilemma with a21 > a11 > a22 > a12.
  Game2x2 prisoners_dilemma(double lo = -5.0, double hi = 5.0) {
    std::vector<double> v{uniform(lo, hi), uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)};
    std::sort(v.begin(), v.end());
    const double a12 = v[0], a22 = v[1], a11 = v[2], a21 = v[3];
    return Game2x2::symmetric({{{a11, a12}, {a21, a22}}});
  }

 private:
  std::mt19937_64 engine_;
};

inline Game2x2 prisoners_dilemma_fixture() { return Game2x2::symmetric({{{3.0, 0.0}, {5.0, 1.0}}}); }
inline Game2x2 matching_pennies() { return Game2x2::from_rows(1, -1, -1, 1, -1, 1, 1, -1); }
inline Game2x2 coordination_fixture() { return Game2x2::from_rows(2, 0, 0, 1, 2, 0, 0, 1); }
inline Game2x2 anticoordination_fixture() { return Game2x2::symmetric({{{0.0, 3.0}, {1.0, 2.0}}}); }

// Payoff cell by cell, written directly from the weighted-sum definition.
inline Game2x2 oracle_transform(const Game2x2& g, const EmpathyMatrix& l) {
  Game2x2 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      out.a[i][j] = l.l11 * g.a[i][j] + l.l12 * g.b[i][j];
      out.b[i][j] = l.l21 * g.a[i][j] + l.l22 * g.b[i][j];
    }
  return out;
}

// Cells from which neither player can gain by deviating alone.
inline std::set<std::pair<int, int>> oracle_pure_nash(const Game2x2& g) {
  std::set<std::pair<int, int>> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double best_row = std::max(g.a[0][j], g.a[1][j]);
      const double best_col = std::max(g.b[i][0], g.b[i][1]);
      if (g.a[i][j] == best_row && g.b[i][j] == best_col) out.insert({i + 1, j + 1});
    }
  return out;
}

// Is action `action` (1 or 2) of `player` weakly dominated by the other action?
inline bool oracle_dominated(const Game2x2& g, int player, int action) {
  const int k = action - 1, o = 1 - k;
  bool all_ge = true, some_gt = false;
  for (int t = 0; t < 2; ++t) {
    const double mine = player == 1 ? g.a[k][t] : g.b[t][k];
    const double other = player == 1 ? g.a[o][t] : g.b[t][o];
    all_ge = all_ge && other >= mine;
    some_gt = some_gt || other > mine;
  }
  return all_ge && some_gt;
}

template <class T>
std::set<std::pair<int, int>> cell_set(const std::vector<T>& cells) {
  std::set<std::pair<int, int>> out;
  for (const auto& c : cells) {
    if constexpr (std::is_same_v<T, JointAction>)
      out.insert({c.row, c.col});
    else
      out.insert({c.cell.row, c.cell.col});
  }
  return out;
}

}  // namespace empathica::testing
