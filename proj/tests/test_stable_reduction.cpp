#include "qlines/stable_reduction.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qlines;

namespace {

using Q = Rational;

Series series(std::vector<Q> c) {
  int order = static_cast<int>(c.size());
  return {std::move(c), order};
}

double j_of(const ConfigClass<Q>& c) { return static_cast<double>(std::get<OneDouble<Q>>(c).j); }

FlexNormalForm second_quartic(int sign = 1) {
  // x1^4 + 2 x0^4 - x0 x1 x2^2 + 3 x2^4 + x0^2 x1 x2
  MultiPoly<Q> q(3, Q(0));
  q.add_term({0, 4, 0}, Q(1));
  q.add_term({4, 0, 0}, Q(2));
  q.add_term({1, 1, 2}, Q(-1));
  q.add_term({0, 0, 4}, Q(3));
  q.add_term({2, 1, 1}, Q(1));
  return FlexNormalForm(q, sign);
}

Q rand_nonzero(std::mt19937_64& rng, int bound = 4) {
  std::uniform_int_distribution<int> d(1, bound);
  std::bernoulli_distribution s(0.5);
  Q x(d(rng), d(rng));
  return s(rng) ? x : Q(-x);
}

// alpha = a0 t^n + (random higher terms), similarly beta; zero series when n is 0.
ArcSpec random_arc(std::mt19937_64& rng, int n, const Q& a0, int m, const Q& b0) {
  int order = std::max(n ? 3 * n : 0, m ? 2 * m : 0) + 2;
  std::vector<Q> a(static_cast<std::size_t>(order), Q(0)), b = a;
  std::bernoulli_distribution keep(0.5);
  if (n) {
    a[static_cast<std::size_t>(n)] = a0;
    for (int k = n + 1; k < order; ++k)
      if (keep(rng)) a[static_cast<std::size_t>(k)] = rand_nonzero(rng, 3);
  }
  if (m) {
    b[static_cast<std::size_t>(m)] = b0;
    for (int k = m + 1; k < order; ++k)
      if (keep(rng)) b[static_cast<std::size_t>(k)] = rand_nonzero(rng, 3);
  }
  return ArcSpec(series(a), series(b));
}

}  // namespace

TEST(ArcSpec, Validation) {
  EXPECT_THROW(ArcSpec(series({Q(1), Q(1)}), series({Q(0), Q(1)})), std::invalid_argument);
  EXPECT_THROW(ArcSpec(series({Q(0), Q(0), Q(0)}), series({Q(0), Q(0), Q(0)})), std::invalid_argument);
  // n = m = 1 needs order > 3.
  EXPECT_THROW(ArcSpec(series({Q(0), Q(1), Q(0)}), series({Q(0), Q(1), Q(0)})), std::invalid_argument);
  EXPECT_NO_THROW(ArcSpec(series({Q(0), Q(1), Q(0), Q(0)}), series({Q(0), Q(1), Q(0), Q(0)})));
}

TEST(ArcLimit, CaseTableExamples) {
  auto a = ArcSpec::monomial(Q(1), 1, Q(1), 1);
  EXPECT_EQ(arc_case(a), ArcCase::BetaDominant);
  EXPECT_EQ(j_of(arc_limit(a)), 0);
  EXPECT_EQ(j_of(arc_limit(ArcSpec::monomial(Q(0), 1, Q(1), 1))), 0);
  EXPECT_EQ(j_of(arc_limit(ArcSpec::monomial(Q(1), 1, Q(0), 1))), 1728);
  EXPECT_EQ(j_of(arc_limit(ArcSpec::monomial(Q(1), 1, Q(1), 2))), 1728);
  EXPECT_EQ(j_of(arc_limit(ArcSpec::monomial(Q(1), 3, Q(1), 4))), 0);
  EXPECT_EQ(j_of(arc_limit(ArcSpec::monomial(Q(1), 3, Q(1), 5))), 1728);

  auto bal = arc_limit(ArcSpec::monomial(Q(1), 2, Q(1), 3));
  EXPECT_EQ(std::get<OneDouble<Q>>(bal).j, Q(1728 * 4, 31));
  auto bal2 = arc_limit(ArcSpec::monomial(Q(2), 4, Q(-3), 6));
  EXPECT_EQ(std::get<OneDouble<Q>>(bal2).j, Q(1728) * 4 * 8 / (4 * 8 + 27 * 9));
  EXPECT_TRUE(std::holds_alternative<TwoDoubles>(arc_limit(ArcSpec::monomial(Q(-3), 2, Q(2), 3))));
}

TEST(ArcLimit, BalancedFormulaIsExact) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 200; ++k) {
    Q a = rand_nonzero(rng, 9), b = rand_nonzero(rng, 9);
    int s = 1 + k % 2;
    auto lim = arc_limit(ArcSpec::monomial(a, 2 * s, b, 3 * s));
    Q den = 4 * a * a * a + 27 * b * b;
    if (den == 0) {
      EXPECT_TRUE(std::holds_alternative<TwoDoubles>(lim));
    } else {
      EXPECT_EQ(std::get<OneDouble<Q>>(lim).j, 1728 * 4 * a * a * a / den);
    }
  }
}

TEST(ArcLimit, ExceptionalCoordinate) {
  auto arc = ArcSpec::monomial(Q(2), 2, Q(5), 3);
  auto [x, y] = exceptional_coordinate(arc);
  EXPECT_EQ(x, Q(8));
  EXPECT_EQ(y, Q(25));
  EXPECT_THROW(exceptional_coordinate(ArcSpec::monomial(Q(1), 1, Q(1), 1)), std::invalid_argument);
  // (l^2 a, l^3 b) gives the proportional pair (l^6 a^3 : l^6 b^2).
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    Q a = rand_nonzero(rng), b = rand_nonzero(rng), l = rand_nonzero(rng);
    auto p = arc_limit(ArcSpec::monomial(a, 2, b, 3));
    auto q = arc_limit(ArcSpec::monomial(l * l * a, 2, l * l * l * b, 3));
    EXPECT_EQ(p.index(), q.index());
    if (auto* o = std::get_if<OneDouble<Q>>(&p)) EXPECT_EQ(o->j, std::get<OneDouble<Q>>(q).j);
  }
}

TEST(ArcLimit, ReparametrizationAndBaseChange) {
  std::mt19937_64 rng(29);
  const std::vector<std::pair<int, int>> nm{{1, 1}, {2, 1}, {1, 2}, {1, 3}, {3, 4}, {3, 5}, {2, 3}, {4, 6}};
  for (int trial = 0; trial < 80; ++trial) {
    auto [n, m] = nm[static_cast<std::size_t>(trial) % nm.size()];
    auto arc = random_arc(rng, n, rand_nonzero(rng), m, rand_nonzero(rng));
    auto base = arc_limit(arc);
    std::vector<Q> u(static_cast<std::size_t>(arc.alpha().order), Q(0));
    u[1] = rand_nonzero(rng);
    for (std::size_t k = 2; k < u.size(); ++k) u[k] = rand_nonzero(rng, 3);
    auto re = arc.reparametrized(series(u));
    EXPECT_EQ(arc_case(re), arc_case(arc));
    auto rl = arc_limit(re);
    ASSERT_EQ(rl.index(), base.index());
    if (auto* o = std::get_if<OneDouble<Q>>(&base)) EXPECT_EQ(std::get<OneDouble<Q>>(rl).j, o->j);
    for (int k : {2, 3}) {
      auto bc = arc_limit(arc.base_changed(k));
      ASSERT_EQ(bc.index(), base.index());
      if (auto* o = std::get_if<OneDouble<Q>>(&base)) EXPECT_EQ(std::get<OneDouble<Q>>(bc).j, o->j);
    }
  }
  EXPECT_THROW(compose(series({Q(0), Q(1)}), series({Q(1), Q(1)})), std::invalid_argument);
  EXPECT_THROW(base_change(series({Q(0), Q(1)}), 0), std::invalid_argument);
}

TEST(ArcLimit, SeriesHelpers) {
  // (t + t^2) composed with (2t + t^2) = 2t + 5t^2 + 4t^3 + ...
  auto c = compose(series({Q(0), Q(1), Q(1), Q(0)}), series({Q(0), Q(2), Q(1), Q(0)}));
  EXPECT_EQ(c.coeff(1), Q(2));
  EXPECT_EQ(c.coeff(2), Q(5));
  EXPECT_EQ(c.coeff(3), Q(4));
  auto b = base_change(series({Q(0), Q(3), Q(1)}), 2);
  EXPECT_EQ(b.order, 6);
  EXPECT_EQ(b.coeff(2), Q(3));
  EXPECT_EQ(b.coeff(4), Q(1));
  EXPECT_EQ(b.coeff(3), Q(0));
}

TEST(NumericOracle, Examples) {
  auto nf = FlexNormalForm::sample();
  auto step1 = arc_limit_numeric(nf, ArcSpec::monomial(Q(1), 1, Q(1), 1));
  EXPECT_EQ(step1.status, NumericStatus::Converged);
  EXPECT_TRUE(j_agrees(step1.j, 0));
  auto step2 = arc_limit_numeric(nf, ArcSpec::monomial(Q(1), 1, Q(0), 1));
  EXPECT_EQ(step2.status, NumericStatus::Converged);
  EXPECT_TRUE(j_agrees(step2.j, 1728));
  auto bal = arc_limit_numeric(nf, ArcSpec::monomial(Q(1), 2, Q(1), 3));
  EXPECT_EQ(bal.status, NumericStatus::Converged);
  EXPECT_TRUE(j_agrees(bal.j, 1728.0 * 4 / 31)) << bal.j;
  auto two = arc_limit_numeric(nf, ArcSpec::monomial(Q(-3), 2, Q(2), 3));
  EXPECT_EQ(two.status, NumericStatus::Diverged);
}

TEST(NumericOracle, LiteralOrientationFlipsTheSign) {
  auto arc = ArcSpec::monomial(Q(1), 2, Q(1), 3);
  auto lim = arc_limit(arc, -1);
  EXPECT_EQ(std::get<OneDouble<Q>>(lim).j, Q(-1728 * 4, 23));
  auto num = arc_limit_numeric(FlexNormalForm::sample(-1), arc);
  EXPECT_EQ(num.status, NumericStatus::Converged);
  EXPECT_TRUE(j_agrees(num.j, j_of(lim)));
  EXPECT_FALSE(j_agrees(num.j, j_of(arc_limit(arc))));
}

TEST(NumericOracle, ScheduleAndThreads) {
  auto nf = FlexNormalForm::sample();
  auto arc = ArcSpec::monomial(Q(2), 2, Q(-1), 3);
  NumericOptions bad;
  bad.schedule = {1e-4, 1e-3};
  EXPECT_THROW(arc_limit_numeric(nf, arc, bad), std::invalid_argument);
  bad.schedule = {};
  EXPECT_THROW(arc_limit_numeric(nf, arc, bad), std::invalid_argument);
  NumericOptions one, three;
  three.threads = 3;
  auto a = arc_limit_numeric(nf, arc, one), b = arc_limit_numeric(nf, arc, three);
  EXPECT_EQ(a.j, b.j);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_THROW(FlexNormalForm(MultiPoly<Q>(3, Q(0)), 1), std::invalid_argument);
}

TEST(NumericOracle, SlowArcRefinesInsteadOfStoppingEarly) {
  // j - 1728 is about 2.3e4 t here, so the default schedule is still pre-asymptotic.
  ArcSpec arc(series({Q(0), Q(0), Q(0), Q(-1, 5), Q(1), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0)}),
              series({Q(0), Q(0), Q(0), Q(0), Q(0), Q(4), Q(-2), Q(-2), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0)}));
  auto num = arc_limit_numeric(FlexNormalForm::sample(), arc);
  ASSERT_EQ(num.status, NumericStatus::Converged);
  EXPECT_TRUE(j_agrees(num.j, 1728.0));
  EXPECT_GT(num.samples.size(), 5u);
  NumericOptions stuck;
  stuck.max_refinements = 0;
  EXPECT_NE(arc_limit_numeric(FlexNormalForm::sample(), arc, stuck).status, NumericStatus::Converged);
}

TEST(NumericOracle, HundredArcSuite) {
  std::mt19937_64 rng(2024);
  // (n, m); n or m = 0 means that series is identically zero.
  const std::vector<std::pair<int, int>> shapes{
      {1, 1}, {2, 1}, {3, 2}, {0, 1}, {2, 2},  // beta dominates
      {1, 2}, {1, 3}, {2, 4}, {1, 0}, {2, 0},  // alpha dominates
      {3, 4}, {4, 5}, {5, 7}, {3, 5}, {4, 7},  // intermediate
      {2, 3}, {4, 6},                          // balanced
  };
  int per_case[5] = {0, 0, 0, 0, 0};
  int two_doubles = 0;
  for (int k = 0; k < 100; ++k) {
    auto [n, m] = shapes[static_cast<std::size_t>(k) % shapes.size()];
    Q a0 = rand_nonzero(rng), b0 = rand_nonzero(rng);
    if (n == 2 && m == 3 && k % 3 == 0) {  // on the discriminant: 4 a^3 + 27 b^2 = 0
      Q s = rand_nonzero(rng, 3);
      a0 = -3 * s * s;
      b0 = 2 * s * s * s;
    }
    auto arc = random_arc(rng, n, a0, m, b0);
    auto nf = k % 2 ? second_quartic() : FlexNormalForm::sample();
    auto sym = arc_limit(arc);
    auto num = arc_limit_numeric(nf, arc);
    ++per_case[static_cast<int>(arc_case(arc))];
    if (std::holds_alternative<TwoDoubles>(sym)) {
      ++two_doubles;
      EXPECT_EQ(num.status, NumericStatus::Diverged) << "arc " << k;
      continue;
    }
    ASSERT_EQ(num.status, NumericStatus::Converged) << "arc " << k << " case " << to_string(arc_case(arc));
    EXPECT_TRUE(j_agrees(num.j, j_of(sym))) << "arc " << k << " case " << to_string(arc_case(arc)) << ": numeric "
                                            << num.j << " vs " << j_of(sym);
  }
  for (int c = 0; c < 5; ++c) EXPECT_GT(per_case[c], 0) << c;
  EXPECT_GT(two_doubles, 0);
}
