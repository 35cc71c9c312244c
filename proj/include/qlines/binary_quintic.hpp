#pragma once
// Invariants of binary quintics, the moduli point in WP(1,2,3), stability and
// the j-invariant of degenerate configurations.

#include "qlines/binary_form.hpp"
#include "qlines/matrix.hpp"
#include "qlines/multivariate.hpp"
#include "qlines/scalar.hpp"
#include "qlines/univariate.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qlines {

class UnstableQuintic : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// c0 x^5 + c1 x^4 y + ... + c5 y^5, not identically zero.
template <class R>
class BinaryQuintic {
 public:
  explicit BinaryQuintic(std::vector<R> c) : form_(check(std::move(c))) {}
  explicit BinaryQuintic(BinaryForm<R> f) : form_(check(f.coeffs())) {}

  const BinaryForm<R>& form() const { return form_; }
  const R& operator[](int k) const { return form_[k]; }
  const std::vector<R>& coeffs() const { return form_.coeffs(); }

 private:
  static std::vector<R> check(std::vector<R> c) {
    if (c.size() != 6) throw std::invalid_argument("a binary quintic has exactly six coefficients");
    bool zero = true;
    for (const auto& x : c) zero = zero && ring_traits<R>::is_zero(x);
    if (zero) throw std::invalid_argument("binary quintic is identically zero");
    return c;
  }

  BinaryForm<R> form_;
};

template <class R>
struct InvariantVector {
  R i4, i8, i12, i18;
};

/// Scale factors turning the raw transvectant invariants into I4, I8, I12, I18.
/// I18 is scaled so that its coefficients are coprime integers.
namespace invariant_scale {
inline Rational i4() { return Rational(-1) / Rational(Integer("1658880000")); }
inline Rational i8() { return Rational(1) / Rational(Integer("5503765708800000000")); }
inline Rational i12() { return Rational(1) / Rational(Integer("54780521154084864000000000000")); }
inline Rational i18() { return Rational(1) / Rational(Integer("62812323716259432401731584000")); }
}  // namespace invariant_scale

template <class R>
struct CoreInvariants {
  R i4, i8, i12;
};

namespace detail {

template <class R>
R scaled(const R& x, const Rational& s) {
  return x * ring_traits<R>::from_rational(x, s);
}

}  // namespace detail

/// I4, I8, I12 alone (cheaper than the full vector when I18 is not needed).
///   i = (f,f)_4, j = (f,i)_2, tau = (j,j)_2,
///   I4 ~ (i,i)_2, I8 ~ (i,tau)_2, I12 ~ (tau,tau)_2.
template <class R>
CoreInvariants<R> core_invariants(const BinaryQuintic<R>& q) {
  const BinaryForm<R>& f = q.form();
  auto i = transvectant(f, f, 4);
  auto j = transvectant(f, i, 2);
  auto tau = transvectant(j, j, 2);
  return {detail::scaled(transvectant(i, i, 2)[0], invariant_scale::i4()),
          detail::scaled(transvectant(i, tau, 2)[0], invariant_scale::i8()),
          detail::scaled(transvectant(tau, tau, 2)[0], invariant_scale::i12())};
}

/// The four generating invariants; I18 ~ ((i^2,f)_4, (tau^2,f)_4)_1.
template <class R>
InvariantVector<R> invariants(const BinaryQuintic<R>& q) {
  const BinaryForm<R>& f = q.form();
  auto i = transvectant(f, f, 4);
  auto j = transvectant(f, i, 2);
  auto tau = transvectant(j, j, 2);
  auto l5 = transvectant(i * i, f, 4);
  auto l13 = transvectant(tau * tau, f, 4);
  return {detail::scaled(transvectant(i, i, 2)[0], invariant_scale::i4()),
          detail::scaled(transvectant(i, tau, 2)[0], invariant_scale::i8()),
          detail::scaled(transvectant(tau, tau, 2)[0], invariant_scale::i12()),
          detail::scaled(transvectant(l5, l13, 1)[0], invariant_scale::i18())};
}

/// I4^2 - 128 I8. Vanishes exactly on quintics with a repeated root.
template <class R>
R discriminant_invariant(const InvariantVector<R>& iv) {
  return iv.i4 * iv.i4 - iv.i8 * 128LL;
}

/// Substitution x -> p x + q y, y -> r x + s y.
template <class R>
BinaryForm<R> substitute(const BinaryForm<R>& f, const R& p, const R& q, const R& r, const R& s) {
  const int n = f.order();
  const BinaryForm<R> lx({p, q}), ly({r, s});
  const R zero = ring_traits<R>::zero_like(f[0]);
  BinaryForm<R> acc(std::vector<R>(static_cast<std::size_t>(n + 1), zero));
  for (int k = 0; k <= n; ++k) {
    if (ring_traits<R>::is_zero(f[k])) continue;
    BinaryForm<R> term({f[k]});
    for (int e = 0; e < n - k; ++e) term = term * lx;
    for (int e = 0; e < k; ++e) term = term * ly;
    acc = acc + term;
  }
  return acc;
}

/// Point of WP(1,2,3). Two points are equal when (w1,w2,w3) ~ (l w1, l^2 w2, l^3 w3).
template <class F>
class WPPoint {
 public:
  WPPoint(F w1, F w2, F w3) : w_{std::move(w1), std::move(w2), std::move(w3)} {
    using T = field_traits<F>;
    if (T::is_zero(w_[0]) && T::is_zero(w_[1]) && T::is_zero(w_[2])) {
      throw std::invalid_argument("WP(1,2,3) point with all coordinates zero");
    }
  }

  const F& operator[](int k) const { return w_[static_cast<std::size_t>(k)]; }

  /// Image under the weighted Veronese map by the seven monomials of weighted degree 6.
  std::array<F, 7> veronese() const {
    const F &a = w_[0], &b = w_[1], &c = w_[2];
    return {a * a * a * a * a * a, a * a * a * a * b, a * a * b * b, b * b * b, a * a * a * c, a * b * c, c * c};
  }

  friend bool operator==(const WPPoint& x, const WPPoint& y) {
    auto u = x.veronese(), v = y.veronese();
    for (std::size_t i = 0; i < u.size(); ++i) {
      for (std::size_t j = i + 1; j < u.size(); ++j) {
        if (!(u[i] * v[j] == u[j] * v[i])) return false;
      }
    }
    return true;
  }
  friend bool operator!=(const WPPoint& x, const WPPoint& y) { return !(x == y); }

  std::string str() const {
    using T = field_traits<F>;
    return "(" + T::str(w_[0]) + " : " + T::str(w_[1]) + " : " + T::str(w_[2]) + ")";
  }

 private:
  std::array<F, 3> w_;
};

template <class F>
WPPoint<F> moduli_point(const CoreInvariants<F>& c) {
  using T = field_traits<F>;
  if (T::is_zero(c.i4) && T::is_zero(c.i8) && T::is_zero(c.i12)) {
    throw UnstableQuintic("unstable quintic: I4 = I8 = I12 = 0 (a root of multiplicity at least 3)");
  }
  return WPPoint<F>(c.i4, c.i8, c.i12);
}

template <class F>
WPPoint<F> moduli_point(const InvariantVector<F>& iv) {
  return moduli_point(CoreInvariants<F>{iv.i4, iv.i8, iv.i12});
}

template <class F>
WPPoint<F> moduli_point(const BinaryQuintic<F>& f) {
  return moduli_point(core_invariants(f));
}

/// f(x, 1) as a polynomial in x.
template <class F>
UniPoly<F> dehomogenize(const BinaryForm<F>& f) {
  const int n = f.order();
  std::vector<F> c(static_cast<std::size_t>(n + 1), field_traits<F>::zero_like(f[0]));
  for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(n - k)] = f[k];
  return UniPoly<F>(std::move(c), f[0]);
}

/// True iff f has no root of multiplicity 3 or more, i.e. the three second partials
/// have no common root on P^1.
template <class F>
bool is_stable(const BinaryQuintic<F>& q) {
  using T = field_traits<F>;
  const auto& f = q.form();
  std::array<BinaryForm<F>, 3> second{f.derivative(2, 0), f.derivative(1, 1), f.derivative(0, 2)};
  bool at_infinity = true;  // common root at (1 : 0)
  for (const auto& s : second) at_infinity = at_infinity && T::is_zero(s[0]);
  if (at_infinity) return false;
  UniPoly<F> g(f[0]);
  for (const auto& s : second) g = gcd(g, dehomogenize(s));
  return g.degree() < 1;
}

/// 256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2).
template <class F>
F j_from_cross_ratio(const F& l) {
  using T = field_traits<F>;
  const F one = T::one_like(l);
  if (T::is_zero(l) || T::is_zero(l - one)) throw std::domain_error("cross-ratio 0 or 1: degenerate quadruple");
  F s = l * l - l + one;
  F d = l * (l - one);
  return s * s * s * 256LL / (d * d);
}

/// j-invariant of a binary quartic with four distinct roots, via the classical I, J.
template <class F>
F quartic_j(const BinaryForm<F>& q) {
  using T = field_traits<F>;
  if (q.order() != 4) throw std::invalid_argument("quartic_j expects a binary quartic");
  const F& like = q[0];
  const F a = q[0], b = q[1] * T::from_rational(like, Rational(1, 4)), c = q[2] * T::from_rational(like, Rational(1, 6)),
          d = q[3] * T::from_rational(like, Rational(1, 4)), e = q[4];
  F i = a * e - b * d * 4LL + c * c * 3LL;
  F j = a * c * e + b * c * d * 2LL - a * d * d - e * b * b - c * c * c;
  F den = i * i * i - j * j * 27LL;
  if (T::is_zero(den)) throw std::domain_error("quartic has a repeated root");
  return i * i * i * 1728LL / den;
}

template <class F>
struct Smooth5 {
  WPPoint<F> point;
};
template <class F>
struct OneDouble {
  F j;
};
struct TwoDoubles {};

template <class F>
using ConfigClass = std::variant<Smooth5<F>, OneDouble<F>, TwoDoubles>;

/// A determinant-one shear of f that keeps (1 : 0) off the roots.
template <class F>
BinaryForm<F> shear_off_infinity(const BinaryForm<F>& f) {
  using T = field_traits<F>;
  const F zero = T::zero_like(f[0]), one = T::one_like(f[0]);
  for (long long c = 0;; ++c) {
    const F cf = T::from_int(zero, c);
    F at = zero, pw = one;  // f(1, c)
    for (int k = 0; k <= f.order(); ++k) {
      at += f[k] * pw;
      pw *= cf;
    }
    if (!T::is_zero(at)) return c == 0 ? f : substitute(f, one, zero, cf, one);
  }
}

/// Squarefree decomposition of a nonzero binary form over P^1, roots at infinity included.
template <class F>
std::vector<SquarefreeFactor<F>> root_clusters(const BinaryForm<F>& f) {
  if (f.is_zero()) throw std::invalid_argument("root clusters of the zero form");
  return squarefree_decomposition(dehomogenize(shear_off_infinity(f)));
}

/// Root multiplicities in decreasing order, e.g. {3, 1, 1} for a simple flex line.
template <class F>
std::vector<int> multiplicity_profile(const BinaryForm<F>& f) {
  std::vector<int> out;
  for (const auto& p : root_clusters(f)) {
    for (int k = 0; k < p.factor.degree(); ++k) out.push_back(p.multiplicity);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

/// Classifies the root configuration of a stable quintic over F.
template <class F>
ConfigClass<F> classify(const BinaryQuintic<F>& q) {
  using T = field_traits<F>;
  const F one = T::one_like(q[0]);
  BinaryForm<F> f = shear_off_infinity(q.form());
  auto parts = squarefree_decomposition(dehomogenize(f));
  int top = 0, doubles = 0;
  for (const auto& p : parts) {
    top = std::max(top, p.multiplicity);
    if (p.multiplicity == 2) doubles += p.factor.degree();
  }
  if (top >= 3) throw UnstableQuintic("quintic has a root of multiplicity at least 3");
  if (doubles == 0) return Smooth5<F>{moduli_point(q)};
  if (doubles >= 2) return TwoDoubles{};
  UniPoly<F> red = UniPoly<F>::constant(one);
  for (const auto& p : parts) red *= p.factor;
  std::vector<F> c(5, T::zero_like(one));
  for (int k = 0; k <= 4; ++k) c[static_cast<std::size_t>(k)] = red.coeff(4 - k);
  return OneDouble<F>{quartic_j(BinaryForm<F>(std::move(c)))};
}

/// The relation I18^2 + sum c_k I4^a I8^b I12^c = 0 over the twelve monomials of
/// weighted degree 36.
struct FundamentalRelation {
  std::vector<std::array<int, 4>> exponents;  // (a, b, c, e) for I4^a I8^b I12^c I18^e
  std::vector<Rational> coefficients;         // coefficient of I18^2 is 1
  int nullity = 0;
};

inline std::vector<std::array<int, 4>> relation_monomials() {
  std::vector<std::array<int, 4>> m{{0, 0, 0, 2}};
  for (int c = 3; c >= 0; --c) {
    for (int b = (9 - 3 * c) / 2; b >= 0; --b) m.push_back({9 - 3 * c - 2 * b, b, c, 0});
  }
  return m;
}

template <class F>
F evaluate_monomial(const std::array<int, 4>& e, const InvariantVector<F>& iv) {
  F acc = field_traits<F>::one_like(iv.i4);
  const std::array<const F*, 4> base{&iv.i4, &iv.i8, &iv.i12, &iv.i18};
  for (std::size_t k = 0; k < 4; ++k) {
    for (int t = 0; t < e[k]; ++t) acc *= *base[k];
  }
  return acc;
}

inline Rational evaluate_relation(const FundamentalRelation& rel, const InvariantVector<Rational>& iv) {
  Rational acc = 0;
  for (std::size_t k = 0; k < rel.exponents.size(); ++k) acc += rel.coefficients[k] * evaluate_monomial(rel.exponents[k], iv);
  return acc;
}

inline BinaryQuintic<Rational> random_quintic(std::mt19937_64& rng, int bound = 5) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  while (true) {
    std::vector<Rational> c;
    for (int k = 0; k < 6; ++k) c.emplace_back(dist(rng));
    bool zero = true;
    for (const auto& x : c) zero = zero && x == 0;
    if (!zero) return BinaryQuintic<Rational>(std::move(c));
  }
}

/// Finds the degree-36 relation from the null space of the 13 monomials evaluated on
/// random quintics. Throws if the null space is not one-dimensional.
inline FundamentalRelation find_fundamental_relation(std::uint64_t seed = 36, int samples = 24) {
  auto mons = relation_monomials();
  std::mt19937_64 rng(seed);
  Matrix<Rational> m(static_cast<std::size_t>(samples), mons.size(), Rational(0));
  for (int s = 0; s < samples; ++s) {
    auto iv = invariants(random_quintic(rng));
    for (std::size_t k = 0; k < mons.size(); ++k) m(static_cast<std::size_t>(s), k) = evaluate_monomial(mons[k], iv);
  }
  auto ns = m.null_space();
  FundamentalRelation rel;
  rel.exponents = mons;
  rel.nullity = static_cast<int>(ns.size());
  if (ns.size() != 1) {
    throw std::runtime_error("degree-36 relation: null space has dimension " + std::to_string(ns.size()) +
                             ", expected 1");
  }
  const auto& v = ns.front();
  if (v[0] == 0) throw std::runtime_error("degree-36 relation does not involve I18^2");
  for (const auto& x : v) rel.coefficients.push_back(x / v[0]);
  return rel;
}

}  // namespace qlines
