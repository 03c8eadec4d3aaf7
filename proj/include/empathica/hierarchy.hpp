#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "empathica/game.hpp"

namespace empathica {

Matrix2 multiply(const Matrix2& lhs, const Matrix2& rhs);
Matrix2 matrix_power(const Matrix2& m, int k);  // k >= 0, by repeated multiplication
double max_abs_difference(const Matrix2& lhs, const Matrix2& rhs);

// Game whose payoff vector is Lambda^k r, cell by cell.
Game2x2 level_game(const Game2x2& g, const EmpathyMatrix& lam, int k);

// Canonical equilibrium structure: game class, pure equilibria, and the number
// of isolated interior mixed equilibria (plus a continuum marker), e.g.
// "Coordination|11+22|mixed=1". Depends only on the signs of the four payoff
// differences, so it is invariant under positive scaling of the payoffs.
// Differences within rel_tol * max|payoff| of zero are treated as ties.
std::string equilibrium_signature(const Game2x2& g, double rel_tol = 1e-9);

// Default probe games: prisoner's dilemma, coordination, anti-coordination,
// matching pennies.
std::vector<Game2x2> default_battery();

struct InconsistencyWitness {
  std::size_t game_index = 0;
  Game2x2 game;
  int level = 0;
  std::string level_one_signature;
  std::string level_k_signature;
};

enum class VerdictKind { ConsistentUpToK, Inconsistent, StructurallyConsistent };

std::string to_string(VerdictKind k);

struct ConsistencyVerdict {
  // Outcome of the battery comparison: ConsistentUpToK or Inconsistent.
  VerdictKind battery = VerdictKind::ConsistentUpToK;
  std::optional<InconsistencyWitness> witness;  // set iff Inconsistent
  // Fitted eps_k (k = 1..k_max) when Lambda^k = eps_k Lambda with every
  // eps_k > 0; empty otherwise.
  std::optional<std::vector<double>> structural_epsilons;

  // Inconsistent wins; otherwise StructurallyConsistent when the structural
  // condition holds, else ConsistentUpToK.
  VerdictKind summary() const;
};

// Least-squares scalar fit of Lambda^k against Lambda; set when the relative
// residual is below 1e-9.
std::optional<double> proportionality_factor(const Matrix2& power, const Matrix2& base);

// Throws PreconditionError when k_max < 2 or the battery is empty.
ConsistencyVerdict check_consistency(const EmpathyMatrix& lam, int k_max, const std::vector<Game2x2>& battery);

// Solutions of Lambda^2 = eps Lambda whose diagonal entries are roots of
// x^2 - eps x + y = 0 and whose off-diagonal product is y. For y != 0 the
// off-diagonal entries are (l12, y / l12) with l12 = off_diagonal, defaulting
// to sqrt(|y|). Throws NoRealSolution when eps^2 < 4y and PreconditionError
// when eps <= 0 or off_diagonal == 0.
std::vector<EmpathyMatrix> consistent_family(double epsilon, double y, std::optional<double> off_diagonal = {});

// Idempotent profile (l11, l11 (1 - l11) / l21; l21, 1 - l11).
// Throws PreconditionError when l21 == 0.
EmpathyMatrix infinitely_consistent(double l11, double l21);

enum class LimitKind { Zero, IdentityLike, Diverges, Oscillates, Converges };

std::string to_string(LimitKind k);

struct SpectralLimit {
  std::complex<double> eigenvalue1;
  std::complex<double> eigenvalue2;
  double rho = 0.0;  // spectral radius
  LimitKind limit = LimitKind::Oscillates;
  std::optional<Matrix2> limit_matrix;  // for Zero and Converges
};

SpectralLimit spectral_limit(const EmpathyMatrix& lam, int k_max);

struct LevelReport {
  int k = 0;
  Matrix2 power{};
  std::string signature;
};

struct HierarchyAnalysis {
  EmpathyMatrix lam;
  int k_max = 0;
  std::vector<LevelReport> levels;  // k = 1..k_max
  bool consistent_up_to_k = true;   // every level signature equals level 1
  SpectralLimit spectral;
};

HierarchyAnalysis analyze_hierarchy(const Game2x2& g, const EmpathyMatrix& lam, int k_max);

}  // namespace empathica
