#include "empathica/ess.hpp"

#include <algorithm>
#include <cmath>

#include "empathica/error.hpp"

namespace empathica {

Matrix2 homogeneous_payoff(const Matrix2& a, double sigma, double mu) {
  return {{{(sigma + mu) * a[0][0], sigma * a[0][1] + mu * a[1][0]},
           {sigma * a[1][0] + mu * a[0][1], (sigma + mu) * a[1][1]}}};
}

DiagonalReduction reduce(const Matrix2& payoff) {
  return {payoff[0][0] - payoff[1][0], payoff[1][1] - payoff[0][1], payoff};
}

DiagonalReduction reduce(double beta1, double beta2) {
  return {beta1, beta2, {{{beta1, 0.0}, {0.0, beta2}}}};
}

SymmetricEquilibria symmetric_equilibria(const DiagonalReduction& red) {
  SymmetricEquilibria out;
  if (red.degenerate()) {
    out.degenerate = true;
    return out;
  }
  if (red.beta1 >= 0) out.points.push_back(1.0);
  if (red.beta2 >= 0) out.points.push_back(0.0);
  if ((red.beta1 > 0 && red.beta2 > 0) || (red.beta1 < 0 && red.beta2 < 0)) out.points.push_back(red.mixed_point());
  return out;
}

std::string to_string(ConstraintType t) {
  switch (t) {
    case ConstraintType::TypeI: return "TypeI";
    case ConstraintType::TypeII: return "TypeII";
    case ConstraintType::Unconstrained: return "Unconstrained";
    case ConstraintType::Empty: return "Empty";
  }
  return "Unknown";
}

Constraint Constraint::make(double c1, double c2, double V) {
  if (c1 == c2) throw PreconditionError("constraint requires c1 ≠ c2");
  Constraint c;
  c.c1 = c1;
  c.c2 = c2;
  c.V = V;
  c.alpha = (V - c2) / (c1 - c2);
  if (c1 > c2) {
    // y <= alpha
    if (c.alpha < 0.0) {
      c.type = ConstraintType::Empty;
    } else if (V < c1) {
      c.type = ConstraintType::TypeI;
      c.lo = 0.0;
      c.hi = c.alpha;
    }
  } else {
    // y >= alpha
    if (c.alpha > 1.0) {
      c.type = ConstraintType::Empty;
    } else if (V >= c1 && c.alpha > 0.0) {
      c.type = ConstraintType::TypeII;
      c.lo = c.alpha;
      c.hi = 1.0;
    }
  }
  if (c.type == ConstraintType::Empty) c.lo = c.hi = 0.0;
  return c;
}

Constraint Constraint::unconstrained() {
  Constraint c;
  c.c1 = 0.0;
  c.c2 = -1.0;
  c.V = 0.0;
  c.alpha = 1.0;
  return c;
}

std::string to_string(EssKind k) {
  switch (k) {
    case EssKind::PureCorner: return "PureCorner";
    case EssKind::Interior: return "Interior";
    case EssKind::ConstraintBoundary: return "ConstraintBoundary";
  }
  return "Unknown";
}

double reduced_payoff(const DiagonalReduction& red, double x, double m) {
  return x * m * red.beta1 + (1.0 - x) * (1.0 - m) * red.beta2;
}

namespace {

// d/dx of the payoff of x against m: beta1 m - beta2 (1 - m).
double payoff_slope(const DiagonalReduction& red, double m) { return red.beta1 * m - red.beta2 * (1.0 - m); }

double slope_tolerance(const DiagonalReduction& red) { return 1e-12 * (std::abs(red.beta1) + std::abs(red.beta2)); }

EssKind kind_of(double m, const Constraint& con) {
  if (m == 0.0 || m == 1.0) return EssKind::PureCorner;
  if (con.type != ConstraintType::Unconstrained && (m == con.lo || m == con.hi)) return EssKind::ConstraintBoundary;
  return EssKind::Interior;
}

EssResult single(double m, const Constraint& con) { return EssResult{{EssPoint{m, kind_of(m, con)}}, EssStatus::Ok}; }

void require_feasible(const Constraint& con) {
  if (con.type == ConstraintType::Empty) throw PreconditionError("feasible strategy set is empty");
}

}  // namespace

BestResponseSet cbr(const DiagonalReduction& red, const Constraint& con, double m) {
  require_feasible(con);
  if (!con.contains(m)) throw PreconditionError("opponent strategy lies outside the feasible set");
  const double s = payoff_slope(red, m);
  if (s > slope_tolerance(red)) return {con.hi, con.hi};
  if (s < -slope_tolerance(red)) return {con.lo, con.lo};
  return {con.lo, con.hi};
}

EssResult analytic_ess(const DiagonalReduction& red, const Constraint& con) {
  require_feasible(con);
  if (red.degenerate()) return {{}, EssStatus::NoEss};
  if (con.lo == con.hi) return single(con.lo, con);

  std::vector<double> candidates{con.lo, con.hi};
  const double sum = red.beta1 + red.beta2;
  if (sum != 0.0) {
    const double mixed = red.mixed_point();
    if (con.lo < mixed && mixed < con.hi) candidates.push_back(mixed);
  }
  std::sort(candidates.begin(), candidates.end());

  EssResult out;
  for (double m : candidates) {
    const BestResponseSet br = cbr(red, con, m);
    bool ess = false;
    if (br.is_point()) {
      // Unique best reply to itself: strict equilibrium.
      ess = br.lo == m;
    } else {
      // Every feasible x is a best reply; payoff(m, x) - payoff(x, x) equals
      // -(beta1 + beta2)(x - m)^2, positive for all x != m iff the sum is negative.
      ess = sum < 0.0;
    }
    if (ess) out.points.push_back({m, kind_of(m, con)});
  }
  return out;
}

EssResult constrained_ess(const DiagonalReduction& red, const Constraint& con) {
  require_feasible(con);
  if (red.degenerate()) return {{}, EssStatus::NoEss};
  const double b1 = red.beta1, b2 = red.beta2;
  const double alpha = con.alpha;

  if (con.type == ConstraintType::TypeI && con.lo < con.hi) {
    if (b1 > 0 && b2 <= 0) return single(alpha, con);
    if (b1 <= 0 && b2 > 0) return single(0.0, con);
    if (b1 > 0 && b2 > 0 && alpha <= red.mixed_point()) return single(0.0, con);
    if (b1 < 0 && b2 < 0) return single(std::min(red.mixed_point(), alpha), con);
  }
  if (con.type == ConstraintType::TypeII && con.lo < con.hi) {
    if (b1 > 0 && b2 <= 0) return single(1.0, con);
    if (b1 <= 0 && b2 > 0) return single(alpha, con);
    if (b1 > 0 && b2 > 0 && alpha >= red.mixed_point()) return single(1.0, con);
    // On [alpha, 1] the anti-coordination point is pushed up, not down.
    if (b1 < 0 && b2 < 0) return single(std::max(red.mixed_point(), alpha), con);
  }
  return analytic_ess(red, con);
}

bool passes_invasion_test(const DiagonalReduction& red, const Constraint& con, double m,
                          const std::vector<double>& epsilons, int mutants) {
  if (!con.contains(m)) return false;
  if (con.lo == con.hi) return true;
  for (int k = 0; k < mutants; ++k) {
    const double x = con.lo + (con.hi - con.lo) * k / (mutants - 1);
    if (std::abs(x - m) < 1e-9) continue;
    for (double eps : epsilons) {
      const double mix = (1.0 - eps) * m + eps * x;
      if (!(reduced_payoff(red, m, mix) > reduced_payoff(red, x, mix))) return false;
    }
  }
  return true;
}

}  // namespace empathica
