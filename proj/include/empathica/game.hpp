#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace empathica {

using Matrix2 = std::array<std::array<double, 2>, 2>;

// Joint action with 1-based action indices: 1 = Up/Left, 2 = Down/Right.
struct JointAction {
  int row = 1;
  int col = 1;

  std::string label() const;  // "11", "12", "21", "22"
  friend bool operator==(const JointAction&, const JointAction&) = default;
  friend auto operator<=>(const JointAction&, const JointAction&) = default;
};

inline constexpr std::array<JointAction, 4> kAllJointActions{
    JointAction{1, 1}, JointAction{1, 2}, JointAction{2, 1}, JointAction{2, 2}};

// A 2x2 bimatrix game. `a` holds the row player's payoffs, `b` the column
// player's; a[i][j] is the payoff when row plays i+1 and column plays j+1.
struct Game2x2 {
  Matrix2 a{};
  Matrix2 b{};

  static Game2x2 from_rows(double a11, double a12, double a21, double a22,
                           double b11, double b12, double b21, double b22);
  // Symmetric game with b = transpose(a).
  static Game2x2 symmetric(const Matrix2& a);

  double row_payoff(JointAction c) const { return a[c.row - 1][c.col - 1]; }
  double col_payoff(JointAction c) const { return b[c.row - 1][c.col - 1]; }

  bool is_finite() const;
  bool is_symmetric() const;  // b_ij == a_ji exactly

  Game2x2 scaled(double factor) const;
  friend Game2x2 operator+(const Game2x2& lhs, const Game2x2& rhs);
  friend bool operator==(const Game2x2&, const Game2x2&) = default;
};

// Empathy weights. Row i mixes player i's own payoff (l_ii) with the other
// player's payoff (l_ij). No sign restriction.
struct EmpathyMatrix {
  double l11 = 1.0;
  double l12 = 0.0;
  double l21 = 0.0;
  double l22 = 1.0;

  static EmpathyMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static EmpathyMatrix homogeneous(double sigma, double mu) { return {sigma, mu, mu, sigma}; }
  static EmpathyMatrix from_matrix(const Matrix2& m) { return {m[0][0], m[0][1], m[1][0], m[1][1]}; }

  Matrix2 matrix() const { return {{{l11, l12}, {l21, l22}}}; }
  bool is_finite() const;

  friend bool operator==(const EmpathyMatrix&, const EmpathyMatrix&) = default;
};

// a'_ij = l11 a_ij + l12 b_ij,  b'_ij = l22 b_ij + l21 a_ij.
Game2x2 transform(const Game2x2& g, const EmpathyMatrix& lam);

enum class GameClassTag { Coordination, AntiCoordination, Discoordination, DominantStrategy, Degenerate };

std::string to_string(GameClassTag tag);

struct GameClass {
  GameClassTag tag = GameClassTag::Degenerate;
  // Strictly dominant action (1 or 2) for each player, when one exists.
  std::optional<int> row_dominant;
  std::optional<int> col_dominant;
  // Human-readable tied comparisons, e.g. "a11=a21". Non-empty iff Degenerate.
  std::vector<std::string> degenerate_ties;
};

// The four payoff differences that fix the best-response structure:
//   row_first  = a11 - a21, row_second = a22 - a12,
//   col_first  = b11 - b12, col_second = b22 - b21.
// Positive row_first means the row player prefers action 1 against column
// action 1, and so on.
struct PayoffDifferences {
  double row_first;
  double row_second;
  double col_first;
  double col_second;
};

PayoffDifferences payoff_differences(const Game2x2& g);

// Comparisons with |difference| <= tie_tolerance count as ties.
GameClass classify(const Game2x2& g, double tie_tolerance = 0.0);

struct Dominance {
  int player = 1;  // 1 = row, 2 = column
  int action = 1;
  int dominated_by = 2;
  bool strict = false;

  friend bool operator==(const Dominance&, const Dominance&) = default;
};

// Weak dominance: the other action does at least as well everywhere and
// strictly better somewhere. `strict` is set when it is strictly better
// against both opponent actions.
std::vector<Dominance> dominated_actions(const Game2x2& g);

struct SymmetryReport {
  bool before = false;
  bool after = false;
};

SymmetryReport symmetry_report(const Game2x2& g, const EmpathyMatrix& lam);

enum class InequalityVerdict { Reduced, Increased, Unchanged, Undefined };

std::string to_string(InequalityVerdict v);

struct InequalityReport {
  double gap_before = 0.0;  // a_cell - b_cell
  double gap_after = 0.0;   // a'_cell - b'_cell
  std::optional<double> lambda_tilde;  // l12 / l21, empty when l21 == 0
  InequalityVerdict verdict = InequalityVerdict::Undefined;
};

InequalityReport inequality_report(const Game2x2& g, const EmpathyMatrix& lam, JointAction cell);

}  // namespace empathica
