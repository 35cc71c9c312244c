#include "qlines/blowup_ledger.hpp"

#include <gtest/gtest.h>

using namespace qlines;

namespace {
using Q = Rational;
}

TEST(Ledger, PairingStructure) {
  auto l = build_ledger(45);
  EXPECT_EQ(l.rank(), 136u);
  EXPECT_EQ(l(0, 0), Q(130));
  for (int i = 0; i < 45; ++i) {
    EXPECT_EQ(l(l.e(i, 1), l.e(i, 1)), Q(-3));
    EXPECT_EQ(l(l.e(i, 2), l.e(i, 2)), Q(-2));
    EXPECT_EQ(l(l.e(i, 3), l.e(i, 3)), Q(-1));
    EXPECT_EQ(l(l.e(i, 3), 0), Q(1));
    EXPECT_EQ(l(l.e(i, 3), l.e(i, 1)), Q(1));
    EXPECT_EQ(l(l.e(i, 3), l.e(i, 2)), Q(1));
    EXPECT_EQ(l(l.e(i, 1), l.e(i, 2)), Q(0));
    EXPECT_EQ(l(0, l.e(i, 1)), Q(0));
    EXPECT_EQ(l(0, l.e(i, 2)), Q(0));
  }
  for (std::size_t x = 0; x < l.rank(); ++x) {
    for (std::size_t y = 0; y < l.rank(); ++y) {
      EXPECT_EQ(l(x, y), l(y, x));
      if (x > 0 && y > 0 && (x - 1) / 3 != (y - 1) / 3) EXPECT_EQ(l(x, y), Q(0));
    }
  }
  auto one = build_ledger(1);
  EXPECT_EQ(one.rank(), 4u);
  EXPECT_EQ(one(one.e(0, 1), one.e(0, 1)), Q(-3));
  EXPECT_THROW(build_ledger(0), std::invalid_argument);
}

TEST(Ledger, BlowupBookkeeping) {
  BlowupSimulator sim;
  int d = sim.add_curve("D", Q(400));
  int e1 = sim.blow_up("E1", {{d, 2}});
  EXPECT_EQ(sim(d, d), Q(396));
  EXPECT_EQ(sim(d, e1), Q(2));
  int e2 = sim.blow_up("E2", {{d, 1}, {e1, 1}});
  int e3 = sim.blow_up("E3", {{d, 1}, {e1, 1}, {e2, 1}});
  EXPECT_EQ(sim(d, d), Q(394));
  EXPECT_EQ(sim(e1, e1), Q(-3));
  EXPECT_EQ(sim(e2, e2), Q(-2));
  EXPECT_EQ(sim(e3, e3), Q(-1));
  EXPECT_EQ(sim(e1, e2), Q(0));
  EXPECT_EQ(sim(d, e1), Q(0));
  EXPECT_EQ(sim(e3, d), Q(1));
  EXPECT_EQ(400 - 45 * (4 + 1 + 1), 130);

  Ledger wrong(45, Q(131));
  EXPECT_THROW(verify_ledger_by_blowups(wrong, 20), std::logic_error);
  EXPECT_NO_THROW(verify_ledger_by_blowups(build_ledger(45), 20));
}

TEST(Pullback, Multiplicities) {
  auto l = build_ledger(45);
  auto abc = solve_pullback_multiplicities(l);
  EXPECT_EQ(abc[0], Q(2, 3));
  EXPECT_EQ(abc[1], Q(1));
  EXPECT_EQ(abc[2], Q(2));
  // Residuals of the three equations.
  auto p = pullback_class(l, abc);
  EXPECT_EQ(p.coeffs[0], Q(1));
  for (int k = 1; k <= 3; ++k) {
    Q dot = 0;
    for (std::size_t x = 0; x < l.rank(); ++x) dot += p.coeffs[x] * l(x, l.e(0, k));
    EXPECT_EQ(dot, k == 3 ? Q(2, 3) : Q(0));
  }
}

TEST(Pullback, PerturbedLedgerIsSingular) {
  // E1^2 = -2 gives a = b = c / 2, and then the third equation reads 1 = 2/3.
  Ledger l(1, Q(130), {Q(-2), Q(-2), Q(-1)});
  EXPECT_THROW(solve_pullback_multiplicities(l), SingularSystem);
  // With a consistent right-hand side the same matrix still has no unique solution.
  EXPECT_THROW(solve_pullback_multiplicities(l, Q(1)), SingularSystem);
  // A different nonsingular perturbation: E1^2 = -4.
  Ledger m(1, Q(130), {Q(-4), Q(-2), Q(-1)});
  auto abc = solve_pullback_multiplicities(m);
  EXPECT_EQ(abc[0] * 4, abc[2]);
  EXPECT_EQ(abc[1] * 2, abc[2]);
  EXPECT_EQ(1 + abc[0] + abc[1] - abc[2], Q(2, 3));
}

TEST(SelfIntersection, Examples) {
  auto l = build_ledger(45);
  auto p = pullback_class(l, solve_pullback_multiplicities(l));
  EXPECT_EQ(self_intersection(p, l), Q(280));
  DivisorClass strict{std::vector<Q>(l.rank(), Q(0))};
  strict.coeffs[0] = 1;
  EXPECT_EQ(self_intersection(strict, l), Q(130));
  DivisorClass zero{std::vector<Q>(l.rank(), Q(0))};
  EXPECT_EQ(self_intersection(zero, l), Q(0));
  EXPECT_THROW(self_intersection(DivisorClass{{Q(1)}}, l), std::invalid_argument);
}

TEST(DeltaSquare, TwoRoutesAgree) {
  EXPECT_EQ(wps_section_self_intersection({1, 2, 3}, 2), Q(2, 3));
  EXPECT_EQ(wps_section_self_intersection({1, 1, 1}, 7), Q(49));
  EXPECT_EQ(wps_section_self_intersection({1, 2, 3}, 6), Q(6));
  EXPECT_THROW(wps_section_self_intersection({0, 2, 3}, 2), std::invalid_argument);

  auto m = m05_boundary_matrix();
  ASSERT_EQ(m.rows(), 10u);
  for (std::size_t x = 0; x < 10; ++x) {
    int meets = 0;
    for (std::size_t y = 0; y < 10; ++y)
      if (x != y && m(x, y) == 1) ++meets;
    EXPECT_EQ(meets, 3);
  }
  EXPECT_EQ(m05_boundary_square(), Q(20));
  EXPECT_EQ(m05_cross_check(), Q(2, 3));
  EXPECT_EQ(m05_cross_check(), wps_section_self_intersection({1, 2, 3}, 2));
}

TEST(Degree, ViaLedgerAndCombinatorics) {
  EXPECT_EQ(degree_via_ledger(), Q(420));
  EXPECT_EQ(degree_from(Q(4), Q(1, 3)), Q(12));
  EXPECT_THROW(degree_from(Q(4), Q(0)), std::invalid_argument);
  EXPECT_EQ(combinatorial_degree(120, 45), 420);
  EXPECT_EQ(combinatorial_degree(0, 0), 0);
  auto pc = plucker_counts(5);
  EXPECT_EQ(combinatorial_degree(pc.bitangents, pc.flexes), 420);
  EXPECT_THROW(combinatorial_degree(-1, 0), std::invalid_argument);
  EXPECT_EQ(degree_via_ledger(), Q(combinatorial_degree(120, 45)));
}

TEST(Degree, DerivationTableEndsIn420) {
  auto t = derivation_table();
  ASSERT_FALSE(t.empty());
  EXPECT_EQ(t.back().value, "420");
  bool saw_degree = false;
  for (const auto& row : t) {
    EXPECT_FALSE(row.anchor.empty());
    if (row.quantity == "degree") {
      EXPECT_EQ(row.value, "420");
      saw_degree = true;
    }
  }
  EXPECT_TRUE(saw_degree);
}
