#pragma once
// Plane curves, their restrictions to lines, flexes and genericity diagnostics.

#include "qlines/binary_quintic.hpp"
#include "qlines/elimination.hpp"
#include "qlines/matrix.hpp"
#include "qlines/multivariate.hpp"
#include "qlines/scalar.hpp"
#include "qlines/univariate.hpp"

#include <array>
#include <istream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlines {

class MalformedCurve : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Homogeneous ternary form F(x, y, z).
template <class F>
class PlaneCurve {
 public:
  PlaneCurve(MultiPoly<F> poly, int degree) : f_(std::move(poly)), d_(degree) {
    if (f_.arity() != 3) throw std::invalid_argument("a plane curve needs a ternary form");
    if (f_.is_zero()) throw std::invalid_argument("plane curve equation is zero");
    if (!f_.is_homogeneous(degree)) throw MalformedCurve("equation is not homogeneous of degree " + std::to_string(degree));
  }

  const MultiPoly<F>& poly() const { return f_; }
  int degree() const { return d_; }

  template <class G, class Map>
  PlaneCurve<G> map_coefficients(const G& like, Map&& fn) const {
    return PlaneCurve<G>(f_.map_coefficients(like, std::forward<Map>(fn)), d_);
  }

  friend PlaneCurve operator+(const PlaneCurve& a, const PlaneCurve& b) {
    if (a.d_ != b.d_) throw std::invalid_argument("adding curves of different degrees");
    return PlaneCurve(a.f_ + b.f_, a.d_);
  }

  /// F composed with the linear change X = M X'.
  PlaneCurve transform(const Matrix<F>& m) const {
    std::vector<MultiPoly<F>> subs;
    for (std::size_t i = 0; i < 3; ++i) {
      MultiPoly<F> row(3, f_.zero_element());
      for (std::size_t j = 0; j < 3; ++j) row.add_term(unit(j), m(i, j));
      subs.push_back(row);
    }
    return PlaneCurve(f_.compose(subs), d_);
  }

 private:
  static Exponent unit(std::size_t j) {
    Exponent e(3, 0);
    e[j] = 1;
    return e;
  }

  MultiPoly<F> f_;
  int d_;
};

/// Reduction of a rational curve modulo p.
inline PlaneCurve<Fp> reduce(const PlaneCurve<Rational>& d, const PrimeField& field) {
  return d.map_coefficients(field.zero(), [&](const Rational& q) { return field.from_rational(q); });
}

/// Records "i j k coefficient", one per line; '#' starts a comment.
inline PlaneCurve<Rational> parse_curve(std::istream& in, int degree = 5) {
  MultiPoly<Rational> f(3, Rational(0));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> fields;
    while (ls >> tok) fields.push_back(tok);
    if (fields.empty()) continue;
    auto where = "line " + std::to_string(lineno) + ": ";
    if (fields.size() != 4) throw MalformedCurve(where + "expected 'i j k coefficient'");
    Exponent e(3);
    for (std::size_t k = 0; k < 3; ++k) {
      try {
        std::size_t used = 0;
        e[k] = std::stoi(fields[k], &used);
        if (used != fields[k].size() || e[k] < 0) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw MalformedCurve(where + "bad exponent '" + fields[k] + "'");
      }
    }
    if (e[0] + e[1] + e[2] != degree) {
      throw MalformedCurve(where + "exponents sum to " + std::to_string(e[0] + e[1] + e[2]) + ", expected " +
                           std::to_string(degree));
    }
    try {
      f.add_term(e, parse_rational(fields[3]));
    } catch (const std::exception& ex) {
      throw MalformedCurve(where + ex.what());
    }
  }
  if (f.is_zero()) throw MalformedCurve("curve has no nonzero coefficients");
  return PlaneCurve<Rational>(f, degree);
}

inline PlaneCurve<Rational> parse_curve(const std::string& text, int degree = 5) {
  std::istringstream in(text);
  return parse_curve(in, degree);
}

template <class F>
std::string format_curve(const PlaneCurve<F>& d) {
  std::string out;
  for (const auto& [e, c] : d.poly().terms()) {
    out += std::to_string(e[0]) + " " + std::to_string(e[1]) + " " + std::to_string(e[2]) + " " +
           field_traits<F>::str(c) + "\n";
  }
  return out;
}

/// The line z' = a x' + b y' in the coordinates X' with X = frame * X'.
template <class F>
struct LineChart {
  Matrix<F> frame;
  F a, b;

  LineChart(Matrix<F> m, F a_, F b_) : frame(std::move(m)), a(std::move(a_)), b(std::move(b_)) {
    if (frame.rows() != 3 || frame.cols() != 3) throw std::invalid_argument("frame must be 3x3");
    if (field_traits<F>::is_zero(frame.determinant())) throw std::invalid_argument("frame is singular");
  }

  /// The line u x + v y + w z = 0 presented in the given frame.
  static LineChart from_dual(const F& u, const F& v, const F& w, const Matrix<F>& m) {
    using T = field_traits<F>;
    // In framed coordinates the line has dual vector frame^T (u, v, w).
    std::array<F, 3> l{T::zero_like(u), T::zero_like(u), T::zero_like(u)};
    const std::array<const F*, 3> uvw{&u, &v, &w};
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t i = 0; i < 3; ++i) l[j] += m(i, j) * *uvw[i];
    if (T::is_zero(l[2])) throw std::domain_error("line passes through the chart's point at infinity");
    F inv = T::inverse(l[2]);
    return LineChart(m, -l[0] * inv, -l[1] * inv);
  }

  static LineChart from_dual(const F& u, const F& v, const F& w) {
    using T = field_traits<F>;
    const F zero = T::zero_like(u), one = T::one_like(u);
    Matrix<F> m(3, 3, zero);
    // A coordinate permutation putting a nonzero entry of (u, v, w) last.
    const std::array<const F*, 3> uvw{&u, &v, &w};
    std::size_t last = !T::is_zero(w) ? 2 : !T::is_zero(v) ? 1 : 0;
    if (T::is_zero(*uvw[last])) throw std::invalid_argument("zero dual vector");
    std::array<std::size_t, 3> perm{0, 1, 2};
    std::swap(perm[last], perm[2]);
    for (std::size_t j = 0; j < 3; ++j) m(perm[j], j) = one;
    return from_dual(u, v, w, m);
  }

  /// Dual vector (u : v : w) of the line in the original coordinates.
  std::array<F, 3> dual() const {
    // frame^{-T} (a, b, -1)
    using T = field_traits<F>;
    const F zero = T::zero_like(a);
    Matrix<F> mt(3, 3, zero);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) mt(i, j) = frame(j, i);
    auto x = mt.solve({a, b, -T::one_like(a)});
    return {x[0], x[1], x[2]};
  }
};

namespace detail {

template <class F>
F lift(const F& c, const F&) {
  return c;
}
template <class F>
MultiPoly<F> lift(const F& c, const MultiPoly<F>& like) {
  return MultiPoly<F>::constant(like.arity(), c);
}

// F(X) with each coordinate X_i replaced by the binary linear form lin[i].
template <class F, class R>
BinaryForm<R> compose_linear(const PlaneCurve<F>& d, const std::array<BinaryForm<R>, 3>& lin) {
  const R zero = ring_traits<R>::zero_like(lin[0][0]);
  std::array<std::vector<BinaryForm<R>>, 3> powers;
  for (std::size_t i = 0; i < 3; ++i) {
    powers[i].push_back(BinaryForm<R>({lift(field_traits<F>::one_like(d.poly().zero_element()), zero)}));
    for (int k = 1; k <= d.degree(); ++k) powers[i].push_back(powers[i].back() * lin[i]);
  }
  BinaryForm<R> acc(std::vector<R>(static_cast<std::size_t>(d.degree() + 1), zero));
  for (const auto& [e, c] : d.poly().terms()) {
    BinaryForm<R> t = powers[0][static_cast<std::size_t>(e[0])] * powers[1][static_cast<std::size_t>(e[1])] *
                      powers[2][static_cast<std::size_t>(e[2])];
    std::vector<R> scaled;
    for (const auto& x : t.coeffs()) scaled.push_back(x * lift(c, zero));
    acc = acc + BinaryForm<R>(std::move(scaled));
  }
  return acc;
}

}  // namespace detail

/// F(X) along the line, as a binary form in (x', y') (may be zero if the line lies on D).
template <class F>
BinaryForm<F> restrict_form(const PlaneCurve<F>& d, const LineChart<F>& l) {
  std::array<BinaryForm<F>, 3> lin{BinaryForm<F>({l.a}), BinaryForm<F>({l.a}), BinaryForm<F>({l.a})};
  for (std::size_t i = 0; i < 3; ++i) {
    lin[i] = BinaryForm<F>({l.frame(i, 0) + l.a * l.frame(i, 2), l.frame(i, 1) + l.b * l.frame(i, 2)});
  }
  return detail::compose_linear(d, lin);
}

/// Restriction of a quintic to a line as a binary quintic; a line contained in D is an error.
template <class F>
BinaryQuintic<F> restrict_to_line(const PlaneCurve<F>& d, const LineChart<F>& l) {
  if (d.degree() != 5) throw std::invalid_argument("restrict_to_line expects a quintic");
  auto f = restrict_form(d, l);
  if (f.is_zero()) throw std::domain_error("the line is a component of the curve");
  return BinaryQuintic<F>(f);
}

/// Restriction along the chart family z' = a x' + b y' with (a, b) kept symbolic:
/// coefficients are polynomials in (a, b) of degree at most 5.
template <class F>
BinaryForm<MultiPoly<F>> restrict_symbolic(const PlaneCurve<F>& d, const Matrix<F>& frame) {
  const F zero = d.poly().zero_element();
  auto a = MultiPoly<F>::variable(2, 0, zero), b = MultiPoly<F>::variable(2, 1, zero);
  auto c = [&](const F& x) { return MultiPoly<F>::constant(2, x); };
  std::array<BinaryForm<MultiPoly<F>>, 3> lin{BinaryForm<MultiPoly<F>>({a}), BinaryForm<MultiPoly<F>>({a}),
                                               BinaryForm<MultiPoly<F>>({a})};
  for (std::size_t i = 0; i < 3; ++i) {
    lin[i] = BinaryForm<MultiPoly<F>>({c(frame(i, 0)) + a * frame(i, 2), c(frame(i, 1)) + b * frame(i, 2)});
  }
  return detail::compose_linear(d, lin);
}

/// The moduli of D ∩ L; throws UnstableQuintic at inflectional lines.
template <class F>
WPPoint<F> phi(const PlaneCurve<F>& d, const LineChart<F>& l) {
  return moduli_point(restrict_to_line(d, l));
}

template <class F>
PlaneCurve<F> hessian(const PlaneCurve<F>& d) {
  if (d.degree() < 3) throw std::invalid_argument("hessian needs degree at least 3");
  const auto& f = d.poly();
  std::array<std::array<MultiPoly<F>, 3>, 3> h{
      {{f, f, f}, {f, f, f}, {f, f, f}}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = f.partial(i).partial(j);
  auto det = h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
             h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
  return PlaneCurve<F>(det, 3 * (d.degree() - 2));
}

struct PluckerCounts {
  int dual_degree, flexes, bitangents;
};

/// Plücker numbers of a smooth general plane curve of degree d.
inline PluckerCounts plucker_counts(int d) {
  if (d < 4) throw std::invalid_argument("Plücker counts need degree at least 4");
  return {d * (d - 1), 3 * d * (d - 2), d * (d - 2) * (d - 3) * (d + 3) / 2};
}

/// A uniformly random invertible 3x3 matrix over F_p.
inline Matrix<Fp> random_frame(std::mt19937_64& rng, const PrimeField& field) {
  std::uniform_int_distribution<std::uint64_t> d(0, field.modulus() - 1);
  while (true) {
    Matrix<Fp> m(3, 3, field.zero());
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = field.from_unsigned(d(rng));
    if (!m.determinant().is_zero()) return m;
  }
}

namespace detail {

// F(x, y, 1).
inline MultiPoly<Fp> affine(const MultiPoly<Fp>& f) {
  MultiPoly<Fp> r(2, f.zero_element());
  for (const auto& [e, c] : f.terms()) r.add_term({e[0], e[1]}, c);
  return r;
}

// F(x, y, 0) as a binary form in (x, y).
inline BinaryForm<Fp> at_infinity(const MultiPoly<Fp>& f, int degree) {
  std::vector<Fp> c(static_cast<std::size_t>(degree + 1), f.zero_element());
  for (const auto& [e, v] : f.terms()) {
    if (e[2] == 0) c[static_cast<std::size_t>(e[1])] += v;
  }
  return BinaryForm<Fp>(c);
}

inline std::vector<Fp> roots_in_field(const UniPoly<Fp>& f) {
  std::vector<Fp> out;
  if (f.degree() <= 0) return out;
  const Fp zero = f.zero_element();
  for (std::uint64_t v = 0; v < zero.modulus(); ++v) {
    Fp x = zero.make(v);
    if (f(x).is_zero()) out.push_back(x);
  }
  return out;
}

}  // namespace detail

struct GenericityReport {
  std::uint64_t prime = 0;
  std::uint64_t seed = 0;
  bool smooth = false;
  bool flex_degree_ok = false;
  int flex_degree = 0;  // degree of the flex resultant (45 expected)
  bool higher_flex_ok = false;
  bool flex_resultant_squarefree = false;
  int rational_flexes = 0;           // flexes with a coordinate in F_p
  int rational_flexes_verified = 0;  // of those, tangent line meets D as 3 + 1 + 1
  std::vector<std::string> notes;

  bool generic() const { return smooth && flex_degree_ok && higher_flex_ok; }
};

/// Smoothness, flex count and the higher-flex probe of a quintic over F_p, all in a
/// random frame drawn from `seed`.
inline GenericityReport genericity_report(const PlaneCurve<Rational>& d0, std::uint64_t prime, std::uint64_t seed,
                                          int frames = 3) {
  if (d0.degree() != 5) throw std::invalid_argument("genericity_report expects a quintic");
  const PrimeField field(prime);
  GenericityReport rep;
  rep.prime = prime;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> coin(1, prime - 1);
  const PlaneCurve<Fp> d = reduce(d0, field);

  // Smoothness: a singular point is a common zero of the three partials. In a random
  // frame, compare the x-projections of two pairs of partials and inspect z = 0 apart.
  for (int attempt = 0; attempt < frames && !rep.smooth; ++attempt) {
    auto m = random_frame(rng, field);
    auto f = d.transform(m).poly();
    std::array<MultiPoly<Fp>, 3> g{f.partial(0), f.partial(1), f.partial(2)};
    auto combo = [&]() {
      MultiPoly<Fp> r(3, field.zero());
      for (auto& gi : g) r += gi * field.from_unsigned(coin(rng));
      return detail::affine(r);
    };
    auto p1 = combo(), p2 = combo(), p3 = combo();
    UniPoly<Fp> common(field.zero());
    try {
      common = gcd(resultant_bivar_elim(p1, p2, 1), resultant_bivar_elim(p1, p3, 1));
    } catch (const std::invalid_argument&) {
      rep.notes.push_back("smoothness frame " + std::to_string(attempt) + ": degenerate partials");
      continue;
    }
    UniPoly<Fp> at_inf(field.zero());
    for (auto& gi : g) at_inf = gcd(at_inf, dehomogenize(detail::at_infinity(gi, 4)));
    bool inf_root = true;  // (1 : 0 : 0) common to all partials
    for (auto& gi : g) inf_root = inf_root && gi.coefficient({4, 0, 0}).is_zero();
    if (common.degree() == 0 && at_inf.degree() <= 0 && !inf_root) {
      rep.smooth = true;
    } else {
      rep.notes.push_back("smoothness frame " + std::to_string(attempt) + ": possible singular point");
    }
  }

  // Flexes: intersection of D with its Hessian, projected to x in a random frame.
  auto m = random_frame(rng, field);
  auto dm = d.transform(m);
  auto h = hessian(dm);
  auto fa = detail::affine(dm.poly()), ha = detail::affine(h.poly());
  UniPoly<Fp> flex_res(field.zero());
  try {
    flex_res = resultant_bivar_elim(fa, ha, 1);
  } catch (const std::invalid_argument&) {
    rep.notes.push_back("hessian vanishes identically");
    return rep;
  }
  rep.flex_degree = flex_res.degree();
  rep.flex_degree_ok = flex_res.degree() == 45;
  if (!rep.flex_degree_ok) rep.notes.push_back("flex resultant has degree " + std::to_string(flex_res.degree()));
  if (flex_res.is_zero()) return rep;
  auto parts = squarefree_decomposition(flex_res);
  rep.flex_resultant_squarefree = parts.size() == 1 && parts[0].multiplicity == 1;
  if (!rep.flex_resultant_squarefree) rep.notes.push_back("flex resultant is not squarefree");

  // Probe the flexes with an F_p-rational x-coordinate: the tangent line must meet D
  // with multiplicities exactly {3, 1, 1}.
  for (const Fp& x0 : detail::roots_in_field(flex_res)) {
    std::vector<Fp> pt{x0, field.zero()};
    auto g = gcd(fa.to_univariate(1, pt), ha.to_univariate(1, pt));
    ++rep.rational_flexes;
    if (g.degree() != 1) {
      rep.notes.push_back("flex above x = " + to_string(x0) + " is not isolated");
      continue;
    }
    Fp y0 = -g.coeff(0);
    std::vector<Fp> p3{x0, y0, field.one()};
    const auto& f = dm.poly();
    Fp u = f.partial(0)(p3), v = f.partial(1)(p3), w = f.partial(2)(p3);
    if (u.is_zero() && v.is_zero() && w.is_zero()) {
      rep.notes.push_back("flex above x = " + to_string(x0) + " is a singular point");
      continue;
    }
    std::vector<int> prof;
    try {
      prof = multiplicity_profile(restrict_form(dm, LineChart<Fp>::from_dual(u, v, w)));
    } catch (const std::exception& ex) {
      rep.notes.push_back(std::string("flex probe failed: ") + ex.what());
      continue;
    }
    if (prof == std::vector<int>{3, 1, 1}) {
      ++rep.rational_flexes_verified;
    } else {
      std::string s;
      for (int k : prof) s += (s.empty() ? "" : ",") + std::to_string(k);
      rep.notes.push_back("flex line above x = " + to_string(x0) + " meets D with multiplicities {" + s + "}");
    }
  }
  rep.higher_flex_ok = rep.flex_resultant_squarefree && rep.rational_flexes_verified == rep.rational_flexes;
  return rep;
}

struct FermatFactorization {
  bool identities_in_lmn = false;    // I4, I8, I12 of l x^5 + m y^5 + n (-x-y)^5
  bool identities_in_sigma = false;  // after l = b^5 c^5, m = a^5 c^5, n = a^5 b^5
  bool inverse_on_chart = false;     // the third map has a rational inverse
  int power_map_degree = 0;
  int symmetric_quotient_degree = 0;
  int third_map_degree = 0;
  int degree = 0;
};

/// Verifies the Fermat invariant identities symbolically and returns the factored
/// degree of the moduli map for x^5 + y^5 + z^5. Throws if an identity fails.
inline FermatFactorization fermat_degree_factorization() {
  using P3 = MultiPoly<Rational>;
  const Rational zero(0);
  auto l = P3::variable(3, 0, zero), m = P3::variable(3, 1, zero), n = P3::variable(3, 2, zero);
  auto c = [&](long long v) { return P3::constant(3, Rational(v)); };

  // (-x - y)^5 = -sum_k C(5,k) x^{5-k} y^k
  const std::array<long long, 6> binom{1, 5, 10, 10, 5, 1};
  std::vector<P3> coeffs;
  for (std::size_t k = 0; k < 6; ++k) coeffs.push_back(n * (-binom[k]));
  coeffs[0] += l;
  coeffs[5] += m;
  auto inv = core_invariants(BinaryQuintic<P3>(coeffs));

  FermatFactorization out;
  auto e1 = l + m + n, e2 = m * n + n * l + l * m, e3 = l * m * n;
  out.identities_in_lmn =
      inv.i4 == e2 * e2 - c(4) * e3 * e1 && inv.i8 == e3 * e3 * e2 && inv.i12 == e3.pow(4);
  if (!out.identities_in_lmn) throw std::runtime_error("Fermat invariant identities fail in (l, m, n)");

  // Substitute l = B C, m = A C, n = A B with (A, B, C) = (a^5, b^5, c^5).
  auto A = P3::variable(3, 0, zero), B = P3::variable(3, 1, zero), C = P3::variable(3, 2, zero);
  std::vector<P3> sub{B * C, A * C, A * B};
  auto s1 = A + B + C, s2 = A * B + B * C + C * A, s3 = A * B * C;
  out.identities_in_sigma = inv.i4.compose(sub) == s3 * s3 * (s1 * s1 - c(4) * s2) &&
                            inv.i8.compose(sub) == s3.pow(5) * s1 && inv.i12.compose(sub) == s3.pow(8);
  if (!out.identities_in_sigma) throw std::runtime_error("Fermat invariant identities fail in sigma");

  // w = (s1^2 - 4 s2 : s1 s3 : s3^2) and psi = (w2 : (w2^2 - w1 w3) / 4 : w3^2) compose to
  // weighted rescalings by s3 and w3 in either order, so the third map is birational.
  auto w = std::vector<P3>{s1 * s1 - c(4) * s2, s1 * s3, s3 * s3};
  auto psi = [&](const std::vector<P3>& v) {
    return std::vector<P3>{v[1], (v[1] * v[1] - v[0] * v[2]) * P3::constant(3, Rational(1, 4)), v[2] * v[2]};
  };
  auto rescaled = [](const std::vector<P3>& v, const P3& lam) {
    return std::vector<P3>{v[0] * lam, v[1] * lam * lam, v[2] * lam * lam * lam};
  };
  auto w1 = P3::variable(3, 0, zero), w2 = P3::variable(3, 1, zero), w3 = P3::variable(3, 2, zero);
  out.inverse_on_chart = psi(w) == rescaled({s1, s2, s3}, s3) && [&] {
    auto back = psi({w1, w2, w3});
    std::vector<P3> again{back[0] * back[0] - c(4) * back[1], back[0] * back[2], back[2] * back[2]};
    return again == rescaled({w1, w2, w3}, w3);
  }();
  out.power_map_degree = 5 * 5;  // (a : b : c) -> (a^5 : b^5 : c^5)
  out.symmetric_quotient_degree = 3 * 2 * 1;  // quotient of P^2 by permutations of (A, B, C)
  out.third_map_degree = out.inverse_on_chart ? 1 : 0;
  out.degree = out.power_map_degree * out.symmetric_quotient_degree * out.third_map_degree;
  return out;
}

}  // namespace qlines
