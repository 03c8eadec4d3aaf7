#include <gtest/gtest.h>

#include "empathica/error.hpp"
#include "empathica/hierarchy.hpp"
#include "support.hpp"

using namespace empathica;
using namespace empathica::testing;

namespace {

EmpathyMatrix ones(double rho) { return {rho / 2, rho / 2, rho / 2, rho / 2}; }

Matrix2 hand_square(const EmpathyMatrix& l) {
  return {{{l.l11 * l.l11 + l.l12 * l.l21, l.l11 * l.l12 + l.l12 * l.l22},
           {l.l21 * l.l11 + l.l22 * l.l21, l.l21 * l.l12 + l.l22 * l.l22}}};
}

double idempotency_gap(const EmpathyMatrix& l) { return max_abs_difference(hand_square(l), l.matrix()); }

}  // namespace

TEST(Powers, MultiplyAndPower) {
  const Matrix2 m{{{1, 2}, {3, 4}}};
  EXPECT_EQ(multiply(m, m), (Matrix2{{{7, 10}, {15, 22}}}));
  EXPECT_EQ(matrix_power(m, 0), (Matrix2{{{1, 0}, {0, 1}}}));
  EXPECT_EQ(matrix_power(m, 3), multiply(m, multiply(m, m)));
  EXPECT_THROW(matrix_power(m, -1), PreconditionError);
}

TEST(LevelGame, Examples) {
  const Game2x2 pd = prisoners_dilemma_fixture();
  EXPECT_EQ(level_game(pd, ones(0.8), 0), pd);
  EXPECT_EQ(level_game(pd, EmpathyMatrix::identity(), 7), pd);
  const Game2x2 one = level_game(pd, ones(0.8), 1);
  for (int k = 1; k <= 10; ++k) {
    const Game2x2 lk = level_game(pd, ones(0.8), k);
    const double factor = std::pow(0.8, k - 1);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        EXPECT_NEAR(lk.a[i][j], factor * one.a[i][j], 1e-12);
        EXPECT_NEAR(lk.b[i][j], factor * one.b[i][j], 1e-12);
      }
  }
}

TEST(Signature, Form) {
  EXPECT_EQ(equilibrium_signature(prisoners_dilemma_fixture()), "DominantStrategy|22|mixed=0");
  EXPECT_EQ(equilibrium_signature(coordination_fixture()), "Coordination|11+22|mixed=1");
  EXPECT_EQ(equilibrium_signature(matching_pennies()), "Discoordination|none|mixed=1");
  EXPECT_EQ(equilibrium_signature(Game2x2{}), "Degenerate|11+12+21+22|mixed=0+continuum");
}

TEST(SignatureProperty, PositiveScalingInvariance) {
  Rng rng(60);
  for (int n = 0; n < 2000; ++n) {
    const Game2x2 g = n % 2 ? rng.game() : rng.integer_game();
    const double c = std::exp(rng.uniform(-20, 20));
    EXPECT_EQ(equilibrium_signature(g.scaled(c)), equilibrium_signature(g));
  }
}

TEST(Consistency, Examples) {
  const ConsistencyVerdict positive = check_consistency(ones(0.8), 10, default_battery());
  EXPECT_EQ(positive.battery, VerdictKind::ConsistentUpToK);
  EXPECT_EQ(positive.summary(), VerdictKind::StructurallyConsistent);
  ASSERT_TRUE(positive.structural_epsilons.has_value());
  ASSERT_EQ(positive.structural_epsilons->size(), 10u);
  for (int k = 1; k <= 10; ++k)
    EXPECT_NEAR((*positive.structural_epsilons)[static_cast<std::size_t>(k - 1)], std::pow(0.8, k - 1), 1e-9);

  const ConsistencyVerdict negative = check_consistency(ones(-0.8), 10, default_battery());
  EXPECT_EQ(negative.summary(), VerdictKind::Inconsistent);
  ASSERT_TRUE(negative.witness.has_value());
  EXPECT_EQ(negative.witness->level, 2);
  EXPECT_EQ(negative.witness->game, prisoners_dilemma_fixture());
  EXPECT_EQ(negative.witness->level_one_signature, "DominantStrategy|22|mixed=0");
  EXPECT_EQ(negative.witness->level_k_signature, "DominantStrategy|11|mixed=0");
  EXPECT_FALSE(negative.structural_epsilons.has_value());

  const ConsistencyVerdict identity = check_consistency(EmpathyMatrix::identity(), 10, default_battery());
  EXPECT_EQ(identity.battery, VerdictKind::ConsistentUpToK);
  EXPECT_FALSE(identity.witness.has_value());

  EXPECT_THROW(check_consistency(ones(1), 1, default_battery()), PreconditionError);
  EXPECT_THROW(check_consistency(ones(1), 5, {}), PreconditionError);
}

TEST(Consistency, WitnessIsEarliestLevel) {
  // Rotation by 90 degrees: level 2 is -I, which flips every game.
  const EmpathyMatrix rot{0, -1, 1, 0};
  const ConsistencyVerdict v = check_consistency(rot, 8, default_battery());
  ASSERT_EQ(v.battery, VerdictKind::Inconsistent);
  for (std::size_t i = 0; i < default_battery().size(); ++i) {
    const Game2x2& g = default_battery()[i];
    const std::string one = equilibrium_signature(level_game(g, rot, 1));
    for (int k = 2; k < v.witness->level; ++k) EXPECT_EQ(equilibrium_signature(level_game(g, rot, k)), one);
  }
}

TEST(ConsistencyProperty, StructuralConditionImpliesBatteryConsistency) {
  Rng rng(61);
  for (int n = 0; n < 300; ++n) {
    std::vector<EmpathyMatrix> family;
    const double eps = rng.uniform(0.2, 2.0);
    const double y = rng.uniform(-2.0, eps * eps / 4);
    family = consistent_family(eps, y, rng.uniform(0.3, 2.0));
    family.push_back(ones(rng.uniform(0.1, 1.9)));
    family.push_back(infinitely_consistent(rng.uniform(-1, 2), rng.uniform(0.5, 2)));
    for (const EmpathyMatrix& l : family) {
      const ConsistencyVerdict v = check_consistency(l, 10, default_battery());
      EXPECT_TRUE(v.structural_epsilons.has_value());
      EXPECT_NE(v.summary(), VerdictKind::Inconsistent)
          << l.l11 << ' ' << l.l12 << ' ' << l.l21 << ' ' << l.l22 << ' ' << v.witness->level_k_signature;
    }
  }
}

TEST(ConsistentFamily, Examples) {
  const auto quarter = consistent_family(1.2, 0.36);
  ASSERT_EQ(quarter.size(), 1u);
  for (double v : {quarter[0].l11, quarter[0].l12, quarter[0].l21, quarter[0].l22}) EXPECT_DOUBLE_EQ(v, 0.6);

  const auto diagonal = consistent_family(1.5, 0.0);
  EXPECT_TRUE(std::find(diagonal.begin(), diagonal.end(), EmpathyMatrix{1.5, 0, 0, 1.5}) != diagonal.end());

  for (double l12 : {0.5, -3.0, 7.0}) {
    const auto sols = consistent_family(1.0, -2.0, l12);
    ASSERT_EQ(sols.size(), 2u);
    EXPECT_DOUBLE_EQ(sols[0].l11, 2.0);
    EXPECT_DOUBLE_EQ(sols[0].l22, -1.0);
    EXPECT_DOUBLE_EQ(sols[0].l21, -2.0 / l12);
    for (const EmpathyMatrix& l : sols) EXPECT_LT(max_abs_difference(hand_square(l), l.matrix()), 1e-12);
  }

  EXPECT_THROW(consistent_family(1.0, 1.0), NoRealSolution);
  EXPECT_THROW(consistent_family(0.0, -1.0), PreconditionError);
  EXPECT_THROW(consistent_family(1.0, -1.0, 0.0), PreconditionError);
}

TEST(ConsistentFamilyProperty, SquareIsEpsTimesLambda) {
  Rng rng(62);
  for (int n = 0; n < 1000; ++n) {
    const double eps = rng.uniform(0.01, 3.0);
    const double y = rng.coin() ? 0.0 : rng.uniform(-3.0, eps * eps / 4);
    for (const EmpathyMatrix& l : consistent_family(eps, y)) {
      const Matrix2 sq = hand_square(l);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) EXPECT_NEAR(sq[i][j], eps * l.matrix()[i][j], 1e-10);
    }
  }
}

TEST(InfinitelyConsistent, Examples) {
  const EmpathyMatrix a = infinitely_consistent(1.0, 0.7);
  EXPECT_EQ(a, (EmpathyMatrix{1.0, 0.0, 0.7, 0.0}));
  EXPECT_EQ(idempotency_gap(a), 0.0);

  const EmpathyMatrix b = infinitely_consistent(0.5, 0.25);
  EXPECT_EQ(b, (EmpathyMatrix{0.5, 1.0, 0.25, 0.5}));
  EXPECT_LT(idempotency_gap(b), 1e-12);

  EXPECT_LT(idempotency_gap(EmpathyMatrix::identity()), 1e-12);
  EXPECT_THROW(infinitely_consistent(0.5, 0.0), PreconditionError);
}

TEST(InfinitelyConsistentProperty, IdempotencyCharacterization) {
  Rng rng(63);
  for (int n = 0; n < 1000; ++n) {
    const EmpathyMatrix l = infinitely_consistent(rng.uniform(-1, 2), rng.uniform(0.5, 2) * (rng.coin() ? 1 : -1));
    EXPECT_LT(idempotency_gap(l), 1e-12);
    EXPECT_NEAR(l.l11 + l.l22, 1.0, 1e-15);
  }
  int rejected = 0;
  for (int n = 0; n < 1000; ++n) {
    const EmpathyMatrix l = rng.lambda();
    const double trace = l.l11 + l.l22, det = l.l11 * l.l22 - l.l12 * l.l21;
    if (std::abs(trace - 1) < 1e-6 && std::abs(det) < 1e-6) continue;
    ++rejected;
    EXPECT_GE(idempotency_gap(l), 1e-12);
  }
  EXPECT_GT(rejected, 990);
}

TEST(PowerProperty, ClosedForms) {
  Rng rng(64);
  for (int n = 0; n < 200; ++n) {
    const double rho = rng.uniform(-1.1, 1.1);
    const EmpathyMatrix l = ones(rho);
    const EmpathyMatrix idem = infinitely_consistent(rng.uniform(-1, 2), rng.uniform(0.5, 2));
    for (int k = 1; k <= 20; ++k) {
      const Matrix2 p = matrix_power(l.matrix(), k);
      for (const auto& row : p)
        for (double v : row) EXPECT_NEAR(v, std::pow(rho, k - 1) * rho / 2, 1e-10);
      EXPECT_LT(max_abs_difference(matrix_power(idem.matrix(), k), idem.matrix()), 1e-10);
    }
  }
}

TEST(Spectral, Examples) {
  const SpectralLimit quarter = spectral_limit({0.25, 0.25, 0.25, 0.25}, 50);
  EXPECT_NEAR(quarter.rho, 0.5, 1e-15);
  EXPECT_EQ(quarter.limit, LimitKind::Zero);

  const EmpathyMatrix idem = infinitely_consistent(0.5, 0.25);
  const SpectralLimit conv = spectral_limit(idem, 50);
  EXPECT_NEAR(conv.rho, 1.0, 1e-12);
  EXPECT_EQ(conv.limit, LimitKind::Converges);
  ASSERT_TRUE(conv.limit_matrix.has_value());
  EXPECT_LT(max_abs_difference(*conv.limit_matrix, idem.matrix()), 1e-12);
  const double e1 = conv.eigenvalue1.real(), e2 = conv.eigenvalue2.real();
  EXPECT_NEAR(std::max(e1, e2), 1.0, 1e-12);
  EXPECT_NEAR(std::min(e1, e2), 0.0, 1e-12);

  const SpectralLimit osc = spectral_limit(ones(-1.0), 50);
  EXPECT_NEAR(osc.rho, 1.0, 1e-15);
  EXPECT_EQ(osc.limit, LimitKind::Oscillates);

  EXPECT_EQ(spectral_limit(EmpathyMatrix::identity(), 10).limit, LimitKind::IdentityLike);
  EXPECT_EQ(spectral_limit(ones(3.0), 100).limit, LimitKind::Diverges);
  EXPECT_EQ(spectral_limit(ones(1.01), 10).limit, LimitKind::Diverges);  // radius above 1, guard not reached
  EXPECT_EQ(spectral_limit({1, 1, 0, 1}, 10).limit, LimitKind::Diverges);  // Jordan block
  EXPECT_EQ(spectral_limit({0, -1, 1, 0}, 40).limit, LimitKind::Oscillates);  // rotation
}

TEST(Analysis, LevelsAndCsvShape) {
  const HierarchyAnalysis h = analyze_hierarchy(prisoners_dilemma_fixture(), ones(-0.8), 4);
  ASSERT_EQ(h.levels.size(), 4u);
  EXPECT_EQ(h.levels[0].signature, "DominantStrategy|22|mixed=0");
  EXPECT_EQ(h.levels[1].signature, "DominantStrategy|11|mixed=0");
  EXPECT_EQ(h.levels[2].signature, "DominantStrategy|22|mixed=0");
  EXPECT_FALSE(h.consistent_up_to_k);
  EXPECT_NEAR(h.levels[3].power[0][0], std::pow(-0.8, 4) / 2, 1e-15);
  EXPECT_THROW(analyze_hierarchy(prisoners_dilemma_fixture(), ones(1), 0), PreconditionError);
}
