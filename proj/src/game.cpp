#include "empathica/game.hpp"

#include <cmath>

namespace empathica {

std::string JointAction::label() const { return std::to_string(row) + std::to_string(col); }

Game2x2 Game2x2::from_rows(double a11, double a12, double a21, double a22,
                           double b11, double b12, double b21, double b22) {
  return Game2x2{{{{a11, a12}, {a21, a22}}}, {{{b11, b12}, {b21, b22}}}};
}

Game2x2 Game2x2::symmetric(const Matrix2& a) {
  Game2x2 g;
  g.a = a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g.b[i][j] = a[j][i];
  return g;
}

bool Game2x2::is_finite() const {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!std::isfinite(a[i][j]) || !std::isfinite(b[i][j])) return false;
  return true;
}

bool Game2x2::is_symmetric() const {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (b[i][j] != a[j][i]) return false;
  return true;
}

Game2x2 Game2x2::scaled(double factor) const {
  Game2x2 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      out.a[i][j] = factor * a[i][j];
      out.b[i][j] = factor * b[i][j];
    }
  return out;
}

Game2x2 operator+(const Game2x2& lhs, const Game2x2& rhs) {
  Game2x2 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      out.a[i][j] = lhs.a[i][j] + rhs.a[i][j];
      out.b[i][j] = lhs.b[i][j] + rhs.b[i][j];
    }
  return out;
}

bool EmpathyMatrix::is_finite() const {
  return std::isfinite(l11) && std::isfinite(l12) && std::isfinite(l21) && std::isfinite(l22);
}

namespace {

// own_weight * own + other_weight * other, skipping a zero other-weight term so
// that the identity matrix reproduces the input bit for bit (including -0.0).
double mix(double own_weight, double own, double other_weight, double other) {
  double v = own_weight * own;
  if (other_weight != 0.0) v += other_weight * other;
  return v;
}

}  // namespace

Game2x2 transform(const Game2x2& g, const EmpathyMatrix& lam) {
  Game2x2 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      out.a[i][j] = mix(lam.l11, g.a[i][j], lam.l12, g.b[i][j]);
      out.b[i][j] = mix(lam.l22, g.b[i][j], lam.l21, g.a[i][j]);
    }
  return out;
}

std::string to_string(GameClassTag tag) {
  switch (tag) {
    case GameClassTag::Coordination: return "Coordination";
    case GameClassTag::AntiCoordination: return "AntiCoordination";
    case GameClassTag::Discoordination: return "Discoordination";
    case GameClassTag::DominantStrategy: return "DominantStrategy";
    case GameClassTag::Degenerate: return "Degenerate";
  }
  return "Unknown";
}

PayoffDifferences payoff_differences(const Game2x2& g) {
  return {g.a[0][0] - g.a[1][0], g.a[1][1] - g.a[0][1],
          g.b[0][0] - g.b[0][1], g.b[1][1] - g.b[1][0]};
}

namespace {

enum class Preference { Matching, Mismatching, FirstDominant, SecondDominant };

// `first` is the gain from action 1 against opponent action 1, `second` the
// gain from action 2 against opponent action 2. Both nonzero.
Preference preference(double first, double second) {
  if (first > 0 && second > 0) return Preference::Matching;
  if (first < 0 && second < 0) return Preference::Mismatching;
  return first > 0 ? Preference::FirstDominant : Preference::SecondDominant;
}

std::optional<int> dominant_action(Preference p) {
  if (p == Preference::FirstDominant) return 1;
  if (p == Preference::SecondDominant) return 2;
  return std::nullopt;
}

}  // namespace

GameClass classify(const Game2x2& g, double tie_tolerance) {
  const PayoffDifferences d = payoff_differences(g);
  GameClass out;

  const std::array<std::pair<double, const char*>, 4> comparisons{{
      {d.row_first, "a11=a21"},
      {d.row_second, "a22=a12"},
      {d.col_first, "b11=b12"},
      {d.col_second, "b22=b21"},
  }};
  for (const auto& [diff, name] : comparisons)
    if (std::abs(diff) <= tie_tolerance) out.degenerate_ties.emplace_back(name);
  if (!out.degenerate_ties.empty()) {
    out.tag = GameClassTag::Degenerate;
    return out;
  }

  const Preference row = preference(d.row_first, d.row_second);
  const Preference col = preference(d.col_first, d.col_second);
  out.row_dominant = dominant_action(row);
  out.col_dominant = dominant_action(col);

  if (out.row_dominant || out.col_dominant) {
    out.tag = GameClassTag::DominantStrategy;
  } else if (row == col) {
    out.tag = row == Preference::Matching ? GameClassTag::Coordination : GameClassTag::AntiCoordination;
  } else {
    out.tag = GameClassTag::Discoordination;
  }
  return out;
}

std::vector<Dominance> dominated_actions(const Game2x2& g) {
  std::vector<Dominance> out;
  // Row player: compare rows of a across both columns.
  for (int k = 0; k < 2; ++k) {
    const int other = 1 - k;
    bool weak = true, some_strict = false, all_strict = true;
    for (int j = 0; j < 2; ++j) {
      const double gain = g.a[other][j] - g.a[k][j];
      weak = weak && gain >= 0;
      some_strict = some_strict || gain > 0;
      all_strict = all_strict && gain > 0;
    }
    if (weak && some_strict) out.push_back({1, k + 1, other + 1, all_strict});
  }
  // Column player: compare columns of b across both rows.
  for (int k = 0; k < 2; ++k) {
    const int other = 1 - k;
    bool weak = true, some_strict = false, all_strict = true;
    for (int i = 0; i < 2; ++i) {
      const double gain = g.b[i][other] - g.b[i][k];
      weak = weak && gain >= 0;
      some_strict = some_strict || gain > 0;
      all_strict = all_strict && gain > 0;
    }
    if (weak && some_strict) out.push_back({2, k + 1, other + 1, all_strict});
  }
  return out;
}

SymmetryReport symmetry_report(const Game2x2& g, const EmpathyMatrix& lam) {
  return {g.is_symmetric(), transform(g, lam).is_symmetric()};
}

std::string to_string(InequalityVerdict v) {
  switch (v) {
    case InequalityVerdict::Reduced: return "Reduced";
    case InequalityVerdict::Increased: return "Increased";
    case InequalityVerdict::Unchanged: return "Unchanged";
    case InequalityVerdict::Undefined: return "Undefined";
  }
  return "Undefined";
}

InequalityReport inequality_report(const Game2x2& g, const EmpathyMatrix& lam, JointAction cell) {
  constexpr double kTolerance = 1e-12;
  const Game2x2 t = transform(g, lam);

  InequalityReport r;
  r.gap_before = g.row_payoff(cell) - g.col_payoff(cell);
  r.gap_after = t.row_payoff(cell) - t.col_payoff(cell);
  if (lam.l21 != 0.0) r.lambda_tilde = lam.l12 / lam.l21;

  if (!std::isfinite(r.gap_before) || !std::isfinite(r.gap_after)) {
    r.verdict = InequalityVerdict::Undefined;
  } else {
    const double change = std::abs(r.gap_after) - std::abs(r.gap_before);
    if (change < -kTolerance)
      r.verdict = InequalityVerdict::Reduced;
    else if (change > kTolerance)
      r.verdict = InequalityVerdict::Increased;
    else
      r.verdict = InequalityVerdict::Unchanged;
  }
  return r;
}

}  // namespace empathica
