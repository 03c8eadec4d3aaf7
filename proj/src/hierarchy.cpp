#include "empathica/hierarchy.hpp"

#include <algorithm>
#include <cmath>

#include "empathica/equilibria.hpp"
#include "empathica/error.hpp"

namespace empathica {

Matrix2 multiply(const Matrix2& lhs, const Matrix2& rhs) {
  Matrix2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = lhs[i][0] * rhs[0][j] + lhs[i][1] * rhs[1][j];
  return out;
}

Matrix2 matrix_power(const Matrix2& m, int k) {
  if (k < 0) throw PreconditionError("matrix power needs k >= 0");
  Matrix2 out{{{1.0, 0.0}, {0.0, 1.0}}};
  for (int i = 0; i < k; ++i) out = multiply(m, out);
  return out;
}

double max_abs_difference(const Matrix2& lhs, const Matrix2& rhs) {
  double d = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) d = std::max(d, std::abs(lhs[i][j] - rhs[i][j]));
  return d;
}

namespace {

double max_abs(const Matrix2& m) { return max_abs_difference(m, Matrix2{}); }

double frobenius_dot(const Matrix2& lhs, const Matrix2& rhs) {
  double s = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s += lhs[i][j] * rhs[i][j];
  return s;
}

}  // namespace

Game2x2 level_game(const Game2x2& g, const EmpathyMatrix& lam, int k) {
  if (k < 0) throw PreconditionError("level must be nonnegative");
  if (k == 0) return g;
  return transform(g, EmpathyMatrix::from_matrix(matrix_power(lam.matrix(), k)));
}

std::string equilibrium_signature(const Game2x2& g, double rel_tol) {
  double scale = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) scale = std::max({scale, std::abs(g.a[i][j]), std::abs(g.b[i][j])});
  const double tol = rel_tol * scale;
  auto sign = [tol](double v) { return std::abs(v) <= tol ? 0.0 : (v > 0 ? 1.0 : -1.0); };

  // Diagonal game with the same best-response structure.
  const PayoffDifferences d = payoff_differences(g);
  const Game2x2 canonical =
      Game2x2::from_rows(sign(d.row_first), 0.0, 0.0, sign(d.row_second), sign(d.col_first), 0.0, 0.0, sign(d.col_second));

  const EquilibriumSet eq = solve(canonical);
  std::string pure;
  for (const PureEquilibrium& p : eq.pure) {
    if (!pure.empty()) pure += '+';
    pure += p.cell.label();
  }
  std::string sig = to_string(classify(canonical).tag) + "|" + (pure.empty() ? "none" : pure) +
                    "|mixed=" + std::to_string(eq.mixed.interior_count());
  if (eq.mixed.has_continuum()) sig += "+continuum";
  return sig;
}

std::vector<Game2x2> default_battery() {
  return {
      Game2x2::symmetric({{{3.0, 0.0}, {5.0, 1.0}}}),                // prisoner's dilemma
      Game2x2::from_rows(2.0, 0.0, 0.0, 1.0, 2.0, 0.0, 0.0, 1.0),    // coordination
      Game2x2::symmetric({{{0.0, 3.0}, {1.0, 2.0}}}),                // anti-coordination (chicken)
      Game2x2::from_rows(1.0, -1.0, -1.0, 1.0, -1.0, 1.0, 1.0, -1.0),  // matching pennies
  };
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::ConsistentUpToK: return "ConsistentUpToK";
    case VerdictKind::Inconsistent: return "Inconsistent";
    case VerdictKind::StructurallyConsistent: return "StructurallyConsistent";
  }
  return "Unknown";
}

VerdictKind ConsistencyVerdict::summary() const {
  if (battery == VerdictKind::Inconsistent) return VerdictKind::Inconsistent;
  return structural_epsilons ? VerdictKind::StructurallyConsistent : VerdictKind::ConsistentUpToK;
}

std::optional<double> proportionality_factor(const Matrix2& power, const Matrix2& base) {
  const double norm = frobenius_dot(base, base);
  if (norm == 0.0) return std::nullopt;
  const double factor = frobenius_dot(power, base) / norm;
  Matrix2 residual{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) residual[i][j] = power[i][j] - factor * base[i][j];
  const double power_norm = std::sqrt(frobenius_dot(power, power));
  const double residual_norm = std::sqrt(frobenius_dot(residual, residual));
  if (residual_norm > 1e-9 * power_norm) return std::nullopt;
  return factor;
}

ConsistencyVerdict check_consistency(const EmpathyMatrix& lam, int k_max, const std::vector<Game2x2>& battery) {
  if (k_max < 2) throw PreconditionError("consistency check needs k_max >= 2");
  if (battery.empty()) throw PreconditionError("consistency check needs at least one probe game");

  ConsistencyVerdict verdict;
  for (std::size_t index = 0; index < battery.size(); ++index) {
    const Game2x2& g = battery[index];
    const std::string level_one = equilibrium_signature(level_game(g, lam, 1));
    // Only levels before the current first bad level can improve on it.
    const int last = verdict.witness ? verdict.witness->level - 1 : k_max;
    for (int k = 2; k <= last; ++k) {
      const std::string level_k = equilibrium_signature(level_game(g, lam, k));
      if (level_k != level_one) {
        verdict.battery = VerdictKind::Inconsistent;
        verdict.witness = InconsistencyWitness{index, g, k, level_one, level_k};
        break;
      }
    }
  }

  const Matrix2 base = lam.matrix();
  std::vector<double> epsilons;
  Matrix2 power = base;
  for (int k = 1; k <= k_max; ++k) {
    if (k > 1) power = multiply(base, power);
    const auto eps = proportionality_factor(power, base);
    if (!eps || !(*eps > 0.0)) {
      epsilons.clear();
      break;
    }
    epsilons.push_back(*eps);
  }
  if (!epsilons.empty()) verdict.structural_epsilons = std::move(epsilons);
  return verdict;
}

std::vector<EmpathyMatrix> consistent_family(double epsilon, double y, std::optional<double> off_diagonal) {
  if (!(epsilon > 0.0)) throw PreconditionError("consistent family needs eps > 0");
  const double discriminant = epsilon * epsilon - 4.0 * y;
  if (discriminant < 0.0) throw NoRealSolution("x^2 - eps x + y = 0 has no real root (eps^2 < 4y)");
  const double root = std::sqrt(discriminant);
  const double high = (epsilon + root) / 2.0;
  const double low = (epsilon - root) / 2.0;

  std::vector<EmpathyMatrix> candidates;
  if (y == 0.0) {
    // Off-diagonal entries vanish, so the trace is unconstrained.
    candidates = {{epsilon, 0.0, 0.0, epsilon}, {epsilon, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, epsilon}};
  } else {
    const double l12 = off_diagonal.value_or(std::sqrt(std::abs(y)));
    if (l12 == 0.0) throw PreconditionError("off-diagonal entry must be nonzero when y != 0");
    const double l21 = y / l12;
    candidates.push_back({high, l12, l21, low});
    if (high != low) candidates.push_back({low, l12, l21, high});
  }

  std::vector<EmpathyMatrix> out;
  for (const EmpathyMatrix& m : candidates) {
    const Matrix2 lam = m.matrix();
    Matrix2 scaled = lam;
    for (auto& row : scaled)
      for (double& v : row) v *= epsilon;
    const double scale = std::max(1.0, max_abs(lam) * max_abs(lam));
    if (max_abs_difference(multiply(lam, lam), scaled) <= 1e-10 * scale) out.push_back(m);
  }
  return out;
}

EmpathyMatrix infinitely_consistent(double l11, double l21) {
  if (l21 == 0.0) throw PreconditionError("infinitely consistent profile needs l21 != 0");
  return {l11, l11 * (1.0 - l11) / l21, l21, 1.0 - l11};
}

std::string to_string(LimitKind k) {
  switch (k) {
    case LimitKind::Zero: return "Zero";
    case LimitKind::IdentityLike: return "IdentityLike";
    case LimitKind::Diverges: return "Diverges";
    case LimitKind::Oscillates: return "Oscillates";
    case LimitKind::Converges: return "Converges";
  }
  return "Unknown";
}

SpectralLimit spectral_limit(const EmpathyMatrix& lam, int k_max) {
  if (k_max < 1) throw PreconditionError("spectral limit needs k_max >= 1");
  constexpr double kTolerance = 1e-12;
  constexpr double kOverflowGuard = 1e12;

  const Matrix2 m = lam.matrix();
  const double trace = m[0][0] + m[1][1];
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const std::complex<double> disc = std::sqrt(std::complex<double>(trace * trace / 4.0 - det, 0.0));
  SpectralLimit out;
  out.eigenvalue1 = trace / 2.0 + disc;
  out.eigenvalue2 = trace / 2.0 - disc;
  out.rho = std::max(std::abs(out.eigenvalue1), std::abs(out.eigenvalue2));

  if (out.rho < 1.0 - kTolerance) {
    out.limit = LimitKind::Zero;
    out.limit_matrix = Matrix2{};
    return out;
  }
  const Matrix2 identity{{{1.0, 0.0}, {0.0, 1.0}}};
  if (max_abs_difference(m, identity) <= kTolerance) {
    out.limit = LimitKind::IdentityLike;
    out.limit_matrix = identity;
    return out;
  }

  Matrix2 previous = m;
  Matrix2 power = m;
  double last_change = 0.0;
  for (int k = 2; k <= std::max(k_max, 2); ++k) {
    previous = power;
    power = multiply(m, power);
    if (max_abs(power) > kOverflowGuard || !std::isfinite(max_abs(power))) {
      out.limit = LimitKind::Diverges;
      return out;
    }
    last_change = max_abs_difference(power, previous);
  }
  if (last_change <= kTolerance * std::max(1.0, max_abs(power))) {
    out.limit = LimitKind::Converges;
    out.limit_matrix = power;
    return out;
  }
  // Spectral radius above one, or a Jordan block on the unit circle, grows
  // without bound even if the guard was not reached within k_max.
  const bool repeated = std::abs(out.eigenvalue1 - out.eigenvalue2) <= kTolerance;
  const bool scalar = std::abs(m[0][1]) <= kTolerance && std::abs(m[1][0]) <= kTolerance &&
                      std::abs(m[0][0] - m[1][1]) <= kTolerance;
  if (out.rho > 1.0 + kTolerance || (repeated && !scalar)) {
    out.limit = LimitKind::Diverges;
    return out;
  }
  out.limit = LimitKind::Oscillates;
  return out;
}

HierarchyAnalysis analyze_hierarchy(const Game2x2& g, const EmpathyMatrix& lam, int k_max) {
  if (k_max < 1) throw PreconditionError("hierarchy analysis needs k_max >= 1");
  HierarchyAnalysis out;
  out.lam = lam;
  out.k_max = k_max;
  Matrix2 power = lam.matrix();
  for (int k = 1; k <= k_max; ++k) {
    if (k > 1) power = multiply(lam.matrix(), power);
    out.levels.push_back({k, power, equilibrium_signature(transform(g, EmpathyMatrix::from_matrix(power)))});
  }
  for (const LevelReport& level : out.levels)
    out.consistent_up_to_k = out.consistent_up_to_k && level.signature == out.levels.front().signature;
  out.spectral = spectral_limit(lam, k_max);
  return out;
}

}  // namespace empathica
