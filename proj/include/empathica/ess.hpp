#pragma once

#include <string>
#include <vector>

#include "empathica/game.hpp"

namespace empathica {

// Single-population payoff matrix under homogeneous empathy (sigma own,
// mu other); the opponent's payoff is its transpose.
Matrix2 homogeneous_payoff(const Matrix2& a, double sigma, double mu);

// beta1 = A11 - A21, beta2 = A22 - A12. The symmetric equilibria of `source`
// coincide with those of diag(beta1, beta2).
struct DiagonalReduction {
  double beta1 = 0.0;
  double beta2 = 0.0;
  Matrix2 source{};

  bool degenerate() const { return beta1 == 0.0 && beta2 == 0.0; }
  // beta2 / (beta1 + beta2); meaningful when beta1 + beta2 != 0.
  double mixed_point() const { return beta2 / (beta1 + beta2); }
};

DiagonalReduction reduce(const Matrix2& payoff);
DiagonalReduction reduce(double beta1, double beta2);

struct SymmetricEquilibria {
  std::vector<double> points;  // x = probability on action 1, order {1, 0, interior}
  bool degenerate = false;     // beta1 = beta2 = 0: every strategy is an equilibrium
};

SymmetricEquilibria symmetric_equilibria(const DiagonalReduction& red);

enum class ConstraintType { TypeI, TypeII, Unconstrained, Empty };

std::string to_string(ConstraintType t);

// Feasible set {y in [0,1] : c1 y + c2 (1 - y) <= V}.
struct Constraint {
  double c1 = 0.0;
  double c2 = 0.0;
  double V = 0.0;
  double alpha = 0.0;  // (V - c2) / (c1 - c2)
  ConstraintType type = ConstraintType::Unconstrained;
  double lo = 0.0;  // feasible interval [lo, hi] when not Empty
  double hi = 1.0;

  // Throws PreconditionError when c1 == c2.
  static Constraint make(double c1, double c2, double V);
  static Constraint unconstrained();

  bool contains(double m) const { return type != ConstraintType::Empty && lo <= m && m <= hi; }
};

enum class EssKind { PureCorner, Interior, ConstraintBoundary };

std::string to_string(EssKind k);

struct EssPoint {
  double m = 0.0;
  EssKind kind = EssKind::Interior;
};

enum class EssStatus { Ok, NoEss };

struct EssResult {
  std::vector<EssPoint> points;
  EssStatus status = EssStatus::Ok;

  bool exists() const { return !points.empty(); }
};

// Payoff of strategy x against a population playing m under diag(beta1, beta2).
double reduced_payoff(const DiagonalReduction& red, double x, double m);

// Constrained ESS via the Type I / Type II case table, with a direct argmax
// analysis for the remaining (unconstrained or boundary) cases. Throws
// PreconditionError for an empty feasible set.
EssResult constrained_ess(const DiagonalReduction& red, const Constraint& con);

// The same set computed only from best-response and second-order conditions
// on the feasible interval, without the case table.
EssResult analytic_ess(const DiagonalReduction& red, const Constraint& con);

// Constrained best responses to m: a single point or the whole interval.
struct BestResponseSet {
  double lo = 0.0;
  double hi = 0.0;

  bool is_point() const { return lo == hi; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Throws PreconditionError when m is not feasible.
BestResponseSet cbr(const DiagonalReduction& red, const Constraint& con, double m);

// Invasion-barrier check: for every feasible mutant x on a uniform grid of
// `mutants` points (x != m), m earns strictly more than x against
// (1 - eps) m + eps x, for each eps in `epsilons`.
bool passes_invasion_test(const DiagonalReduction& red, const Constraint& con, double m,
                          const std::vector<double>& epsilons = {1e-3, 1e-2}, int mutants = 201);

}  // namespace empathica
