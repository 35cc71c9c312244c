#pragma once
// Degree of the moduli map by counting one fiber over F_p.
//
// In the chart z' = a x' + b y' the restricted quintic has coefficients of degree 5 in
// (a, b), and I_d of the restriction has degree 5d/2 in (a, b). The fiber over a
// target (c1 : c2 : c3) with c1 != 0 is cut out by
//   G1 = c2 I4^2 - c1^2 I8,   G2 = c3 I4^3 - c1^3 I12,
// whose common zeros are the fiber plus the inflectional lines (where I4 = I8 = I12 = 0).

#include "qlines/binary_quintic.hpp"
#include "qlines/elimination.hpp"
#include "qlines/plane_curve.hpp"

#include <array>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace qlines {

/// Degree in (a, b) of I_d restricted to the chart family.
inline constexpr int chart_degree(int d) { return 5 * d / 2; }

struct FiberSystem {
  MultiPoly<Fp> i4, i8, i12;  // invariants of the restriction, as polynomials in (a, b)
  MultiPoly<Fp> g1, g2;
};

/// Builds I4, I8, I12 and (G1, G2) in (a, b) by evaluating on a grid wide enough for
/// degree `grid_degree` in each variable and interpolating.
inline FiberSystem build_fiber_system(const PlaneCurve<Fp>& d, const std::array<Fp, 3>& target, const Matrix<Fp>& frame,
                                      unsigned threads = 1, int grid_degree = 2 * chart_degree(12)) {
  if (d.degree() != 5) throw std::invalid_argument("fiber system expects a quintic");
  if (target[0].is_zero()) throw std::invalid_argument("fiber target needs c1 != 0");
  const Fp zero = d.poly().zero_element();
  const std::size_t n = static_cast<std::size_t>(grid_degree) + 1;
  if (n > zero.modulus()) throw FieldTooSmall("F_p too small for the interpolation grid");
  std::vector<Fp> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(zero.make(i));
  std::vector<std::vector<Fp>> v4(n, std::vector<Fp>(n, zero)), v8 = v4, v12 = v4;
  detail::parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto f = restrict_form(d, LineChart<Fp>(frame, xs[i], xs[j]));
      if (f.is_zero()) throw std::domain_error("a chart line lies on the curve");
      auto inv = core_invariants(BinaryQuintic<Fp>(f));
      v4[i][j] = inv.i4;
      v8[i][j] = inv.i8;
      v12[i][j] = inv.i12;
    }
  });
  FiberSystem s{interpolate_grid(xs, xs, v4), interpolate_grid(xs, xs, v8), interpolate_grid(xs, xs, v12),
                MultiPoly<Fp>(2, zero), MultiPoly<Fp>(2, zero)};
  const Fp &c1 = target[0], &c2 = target[1], &c3 = target[2];
  s.g1 = s.i4 * s.i4 * c2 - s.i8 * (c1 * c1);
  s.g2 = s.i4 * s.i4 * s.i4 * c3 - s.i12 * (c1 * c1 * c1);
  return s;
}

struct FiberReport {
  std::uint64_t prime = 0;
  std::uint64_t seed = 0;
  std::array<std::uint64_t, 9> frame{};  // row-major residues of the successful (or last) frame
  std::array<std::uint64_t, 3> target{};
  int g1_degree = 0;
  int g2_degree = 0;
  int bezout = 0;  // deg G1 * deg G2
  int resultant_degree = 0;
  std::vector<std::pair<int, int>> profile;  // (degree, multiplicity), multiplicity increasing
  int fiber_degree = 0;                      // degree of the multiplicity-one part
  int flex_part_degree = 0;
  int flex_part_multiplicity = 0;
  int base_locus_degree = 0;  // a-coordinates of lines with I4 = I8 = I12 = 0
  bool base_locus_confirmed = false;
  int retries_used = 0;
  std::vector<std::string> failures;
  bool success = false;
};

namespace detail {

inline std::array<Fp, 3> random_target(std::mt19937_64& rng, const PrimeField& field) {
  std::uniform_int_distribution<std::uint64_t> d(0, field.modulus() - 1);
  while (true) {
    std::array<Fp, 3> c{field.from_unsigned(d(rng)), field.from_unsigned(d(rng)), field.from_unsigned(d(rng))};
    // c1 != 0 and off the discriminant I4^2 - 128 I8 = 0.
    if (!c[0].is_zero() && !(c[0] * c[0] - c[1] * 128LL).is_zero()) return c;
  }
}

inline UniPoly<Fp> squarefree_part(const UniPoly<Fp>& f) {
  UniPoly<Fp> r = UniPoly<Fp>::constant(f.zero_element().make(1));
  for (const auto& p : squarefree_decomposition(f)) r *= p.factor;
  return r;
}

}  // namespace detail

/// One fiber count over an explicit target; each attempt draws a fresh frame from rng.
inline FiberReport count_fiber_at(const PlaneCurve<Rational>& d0, std::uint64_t prime, const std::array<Fp, 3>& target,
                                  std::mt19937_64& rng, int max_retries, unsigned threads = 1) {
  const PrimeField field(prime);
  const PlaneCurve<Fp> d = reduce(d0, field);
  FiberReport rep;
  rep.prime = prime;
  for (int k = 0; k < 3; ++k) rep.target[static_cast<std::size_t>(k)] = target[static_cast<std::size_t>(k)].value();
  const int e1 = 2 * chart_degree(4), e2 = 3 * chart_degree(4);

  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    rep.retries_used = attempt;
    auto fail = [&](const std::string& why) { rep.failures.push_back("attempt " + std::to_string(attempt) + ": " + why); };
    auto frame = random_frame(rng, field);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) rep.frame[i * 3 + j] = frame(i, j).value();
    FiberSystem sys{MultiPoly<Fp>(2, field.zero()), MultiPoly<Fp>(2, field.zero()), MultiPoly<Fp>(2, field.zero()),
                    MultiPoly<Fp>(2, field.zero()), MultiPoly<Fp>(2, field.zero())};
    try {
      sys = build_fiber_system(d, target, frame, threads);
    } catch (const FieldTooSmall&) {
      throw;
    } catch (const std::exception& ex) {
      fail(ex.what());
      continue;
    }
    rep.g1_degree = sys.g1.total_degree();
    rep.g2_degree = sys.g2.total_degree();
    rep.bezout = rep.g1_degree * rep.g2_degree;
    if (rep.g1_degree != e1 || rep.g2_degree != e2 || sys.g1.degree_in(1) != e1 || sys.g2.degree_in(1) != e2) {
      fail("degree drop in the fiber system: deg G1 = " + std::to_string(rep.g1_degree) +
           ", deg G2 = " + std::to_string(rep.g2_degree) + " (expected " + std::to_string(e1) + ", " +
           std::to_string(e2) + ")");
      continue;
    }
    UniPoly<Fp> r(field.zero());
    try {
      r = resultant_bivar_elim(sys.g1, sys.g2, 1, threads);
    } catch (const FieldTooSmall&) {
      throw;
    } catch (const std::exception& ex) {
      fail(std::string("elimination failed: ") + ex.what());
      continue;
    }
    rep.resultant_degree = r.degree();
    if (r.degree() != rep.bezout) {
      fail("resultant degree " + std::to_string(r.degree()) + " below the Bezout bound " + std::to_string(rep.bezout));
      continue;
    }
    auto parts = squarefree_decomposition(r);
    rep.profile.clear();
    UniPoly<Fp> simple = UniPoly<Fp>::constant(field.one()), repeated = UniPoly<Fp>::constant(field.one());
    for (const auto& p : parts) {
      rep.profile.emplace_back(p.factor.degree(), p.multiplicity);
      (p.multiplicity == 1 ? simple : repeated) *= p.factor;
    }

    // Base locus: a-coordinates of the lines where I4, I8, I12 all vanish.
    UniPoly<Fp> base(field.zero());
    try {
      base = detail::squarefree_part(gcd(resultant_bivar_elim(sys.i4, sys.i8, 1, threads),
                                         resultant_bivar_elim(sys.i4, sys.i12, 1, threads)));
    } catch (const std::exception& ex) {
      fail(std::string("base locus elimination failed: ") + ex.what());
      continue;
    }
    rep.base_locus_degree = base.degree();
    rep.base_locus_confirmed = repeated == base && gcd(simple, base).degree() == 0;
    rep.fiber_degree = simple.degree();
    rep.flex_part_degree = rep.flex_part_multiplicity = 0;
    for (const auto& p : parts) {
      if (p.multiplicity > 1) {
        rep.flex_part_degree += p.factor.degree();
        rep.flex_part_multiplicity = std::max(rep.flex_part_multiplicity, p.multiplicity);
      }
    }
    if (!rep.base_locus_confirmed) {
      fail("repeated part of the resultant does not match the base locus (non-generic chart or target)");
      continue;
    }
    rep.success = true;
    return rep;
  }
  rep.failures.push_back("retries exhausted");
  return rep;
}

/// Draws a target off the discriminant, then counts its fiber.
inline FiberReport count_fiber(const PlaneCurve<Rational>& d0, std::uint64_t prime, std::uint64_t seed, int max_retries,
                               unsigned threads = 1) {
  const PrimeField field(prime);
  std::mt19937_64 rng(seed);
  auto target = detail::random_target(rng, field);
  FiberReport rep = count_fiber_at(d0, prime, target, rng, max_retries, threads);
  rep.seed = seed;
  return rep;
}

struct FiberHistogram {
  std::vector<int> fiber_degrees;  // successful runs only
  std::vector<std::string> annotations;
};

inline FiberHistogram fiber_histogram(const PlaneCurve<Rational>& d0, std::uint64_t prime, int n_targets,
                                      std::uint64_t seed, int max_retries = 3, unsigned threads = 1) {
  FiberHistogram h;
  std::mt19937_64 seeds(seed);
  for (int k = 0; k < n_targets; ++k) {
    std::uint64_t s = seeds();
    auto rep = count_fiber(d0, prime, s, max_retries, threads);
    if (rep.success) {
      h.fiber_degrees.push_back(rep.fiber_degree);
    } else {
      h.annotations.push_back("target " + std::to_string(k) + " (seed " + std::to_string(s) +
                              "): " + (rep.failures.empty() ? "failed" : rep.failures.back()));
    }
  }
  return h;
}

}  // namespace qlines
