#include "qlines/fiber_count.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace qlines;

namespace {

PlaneCurve<Rational> generic_fixture() {
  std::ifstream in(std::string(QLINES_DATA_DIR) + "/generic_quintic.txt");
  return parse_curve(in);
}

Matrix<Fp> frame_of(const FiberReport& r, const PrimeField& field) {
  Matrix<Fp> m(3, 3, field.zero());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = field.from_unsigned(r.frame[i * 3 + j]);
  return m;
}

}  // namespace

TEST(FiberCount, ChartDegrees) {
  EXPECT_EQ(chart_degree(4), 10);
  EXPECT_EQ(chart_degree(8), 20);
  EXPECT_EQ(chart_degree(12), 30);
  EXPECT_EQ(2 * chart_degree(4) * 3 * chart_degree(4), 600);
}

TEST(FiberCount, InvariantDegreesInTheChart) {
  PrimeField field(3001);
  auto d = reduce(generic_fixture(), field);
  std::mt19937_64 rng(4);
  auto frame = random_frame(rng, field);
  auto sys = build_fiber_system(d, {field.one(), field.from_unsigned(5), field.from_unsigned(7)}, frame);
  EXPECT_EQ(sys.i4.total_degree(), 10);
  EXPECT_EQ(sys.i8.total_degree(), 20);
  EXPECT_EQ(sys.i12.total_degree(), 30);
  // Spot-check the interpolant away from the grid.
  for (std::uint64_t a : {100u, 2000u}) {
    for (std::uint64_t b : {77u, 2999u}) {
      Fp fa = field.from_unsigned(a), fb = field.from_unsigned(b);
      auto inv = core_invariants(BinaryQuintic<Fp>(restrict_form(d, LineChart<Fp>(frame, fa, fb))));
      EXPECT_EQ(sys.i4({fa, fb}), inv.i4);
      EXPECT_EQ(sys.i8({fa, fb}), inv.i8);
      EXPECT_EQ(sys.i12({fa, fb}), inv.i12);
    }
  }
}

TEST(FiberCount, FixtureFiberHas420Points) {
  auto d = generic_fixture();
  for (std::uint64_t p : {3001ull, 10007ull}) {
    auto r = count_fiber(d, p, 1, 3);
    ASSERT_TRUE(r.success) << (r.failures.empty() ? "" : r.failures.back());
    EXPECT_EQ(r.g1_degree, 20);
    EXPECT_EQ(r.g2_degree, 30);
    EXPECT_EQ(r.resultant_degree, r.bezout);
    EXPECT_EQ(r.fiber_degree, 420);
    EXPECT_EQ(r.base_locus_degree, 45);
    EXPECT_TRUE(r.base_locus_confirmed);
    std::vector<std::pair<int, int>> expected{{420, 1}, {45, 4}};
    EXPECT_EQ(r.profile, expected);
  }
}

TEST(FiberCount, SimpleRootsAreLinesInTheFiber) {
  auto d0 = generic_fixture();
  const std::uint64_t p = 3001;
  PrimeField field(p);
  auto r = count_fiber(d0, p, 5, 3);
  ASSERT_TRUE(r.success);
  auto d = reduce(d0, field);
  std::array<Fp, 3> target{field.from_unsigned(r.target[0]), field.from_unsigned(r.target[1]),
                           field.from_unsigned(r.target[2])};
  auto frame = frame_of(r, field);
  auto sys = build_fiber_system(d, target, frame);
  auto res = resultant_bivar_elim(sys.g1, sys.g2, 1);
  UniPoly<Fp> simple = UniPoly<Fp>::constant(field.one());
  for (const auto& f : squarefree_decomposition(res))
    if (f.multiplicity == 1) simple *= f.factor;
  WPPoint<Fp> want(target[0], target[1], target[2]);
  int found = 0;
  for (const Fp& a : detail::roots_in_field(simple)) {
    std::vector<Fp> at{a, field.zero()};
    auto g1 = sys.g1.to_univariate(1, at), g2 = sys.g2.to_univariate(1, at);
    for (const Fp& b : detail::roots_in_field(gcd(g1, g2))) {
      auto q = BinaryQuintic<Fp>(restrict_form(d, LineChart<Fp>(frame, a, b)));
      EXPECT_TRUE(moduli_point(q) == want);
      ++found;
    }
  }
  EXPECT_GT(found, 0);
}

TEST(FiberCount, ReproducibleAndThreadIndependent) {
  auto d = generic_fixture();
  auto a = count_fiber(d, 3001, 9, 3, 1);
  auto b = count_fiber(d, 3001, 9, 3, 1);
  auto c = count_fiber(d, 3001, 9, 3, 3);
  for (const auto* x : {&b, &c}) {
    EXPECT_EQ(a.frame, x->frame);
    EXPECT_EQ(a.target, x->target);
    EXPECT_EQ(a.profile, x->profile);
    EXPECT_EQ(a.fiber_degree, x->fiber_degree);
  }
}

TEST(FiberCount, FieldTooSmall) {
  PrimeField field(2503);
  auto d = reduce(generic_fixture(), field);
  std::mt19937_64 rng(1);
  EXPECT_THROW(build_fiber_system(d, {field.one(), field.one(), field.one()}, random_frame(rng, field), 1, 2600),
               FieldTooSmall);
  EXPECT_THROW(count_fiber(generic_fixture(), 31, 1, 1), std::invalid_argument);
}

TEST(FiberCount, HistogramIsConstant) {
  auto h = fiber_histogram(generic_fixture(), 3001, 3, 17);
  ASSERT_EQ(h.fiber_degrees.size(), 3u);
  for (int deg : h.fiber_degrees) EXPECT_EQ(deg, 420);
  EXPECT_TRUE(h.annotations.empty());
}
