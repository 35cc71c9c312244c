#pragma once
// Dense univariate polynomials over an exact field.

#include "qlines/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qlines {

template <class F>
class UniPoly {
  using T = field_traits<F>;

 public:
  /// The zero polynomial over the field of `like`.
  explicit UniPoly(const F& like) : zero_(T::zero_like(like)) {}

  /// Coefficients low to high; `coeffs` must be nonempty (it fixes the field).
  explicit UniPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("UniPoly needs at least one coefficient to fix its field");
    zero_ = T::zero_like(c_.front());
    normalize();
  }

  UniPoly(std::vector<F> coeffs, const F& like) : c_(std::move(coeffs)), zero_(T::zero_like(like)) { normalize(); }

  static UniPoly constant(const F& c) { return UniPoly(std::vector<F>{c}); }
  /// The monomial x.
  static UniPoly x(const F& like) { return UniPoly(std::vector<F>{T::zero_like(like), T::one_like(like)}); }
  /// x - r
  static UniPoly linear_root(const F& r) { return UniPoly(std::vector<F>{-r, T::one_like(r)}); }

  /// Degree, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const F& zero_element() const { return zero_; }
  const std::vector<F>& coeffs() const { return c_; }

  F coeff(int i) const { return i >= 0 && i <= degree() ? c_[static_cast<std::size_t>(i)] : zero_; }
  F leading() const { return is_zero() ? zero_ : c_.back(); }

  F operator()(const F& x) const {
    F acc = zero_;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    normalize();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    normalize();
    return *this;
  }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly(a.zero_);
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (T::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(r), a.zero_);
  }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  friend UniPoly operator*(UniPoly a, const F& s) {
    for (auto& x : a.c_) x *= s;
    a.normalize();
    return a;
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!(a.c_[i] == b.c_[i])) return false;
    }
    return true;
  }

  /// Quotient and remainder; throws on division by the zero polynomial.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    UniPoly r = *this;
    if (degree() < d.degree()) return {UniPoly(zero_), r};
    std::vector<F> q(static_cast<std::size_t>(degree() - d.degree() + 1), zero_);
    F inv = T::inverse(d.leading());
    while (!r.is_zero() && r.degree() >= d.degree()) {
      int shift = r.degree() - d.degree();
      F f = r.leading() * inv;
      q[static_cast<std::size_t>(shift)] = f;
      for (int i = 0; i <= d.degree(); ++i) r.c_[static_cast<std::size_t>(shift + i)] -= f * d.c_[static_cast<std::size_t>(i)];
      r.c_.pop_back();  // leading term cancels exactly
      r.normalize();
    }
    return {UniPoly(std::move(q), zero_), r};
  }
  UniPoly operator%(const UniPoly& d) const { return divmod(d).second; }
  UniPoly operator/(const UniPoly& d) const { return divmod(d).first; }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly(zero_);
    std::vector<F> r;
    r.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * static_cast<long long>(i));
    return UniPoly(std::move(r), zero_);
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    return *this * T::inverse(leading());
  }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      const F& a = c_[static_cast<std::size_t>(i)];
      if (T::is_zero(a)) continue;
      if (!s.empty()) s += " + ";
      s += "(" + T::str(a) + ")";
      if (i >= 1) s += "*" + var;
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void normalize() {
    while (!c_.empty() && T::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<F> c_;
  F zero_{};
};

/// Monic gcd (zero if both inputs are zero).
template <class F>
UniPoly<F> gcd(UniPoly<F> a, UniPoly<F> b) {
  while (!b.is_zero()) {
    UniPoly<F> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Resultant with the convention Res(f, g) = lc(f)^deg(g) * prod_{f(rho)=0} g(rho),
/// evaluated by the Euclidean remainder sequence
///   Res(f, g) = (-1)^(deg f * deg g) * lc(g)^(deg f - deg r) * Res(g, r),  r = f mod g.
template <class F>
F resultant(const UniPoly<F>& f, const UniPoly<F>& g) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant of the zero polynomial");
  using T = field_traits<F>;
  F acc = T::one_like(f.zero_element());
  UniPoly<F> a = f, b = g;
  while (true) {
    int da = a.degree(), db = b.degree();
    if (db == 0) {
      F p = T::one_like(acc);
      for (int i = 0; i < da; ++i) p *= b.leading();
      return acc * p;
    }
    if (da == 0) {
      F p = T::one_like(acc);
      for (int i = 0; i < db; ++i) p *= a.leading();
      return acc * p;
    }
    UniPoly<F> r = a % b;
    if (r.is_zero()) return T::zero_like(acc);
    if ((static_cast<long long>(da) * db) % 2 != 0) acc = -acc;
    for (int i = 0; i < da - r.degree(); ++i) acc *= b.leading();
    a = std::move(b);
    b = std::move(r);
  }
}

template <class F>
struct SquarefreeFactor {
  UniPoly<F> factor;  // monic, squarefree
  int multiplicity;
};

/// Yun's algorithm. The result reassembles to f / lc(f); factors are pairwise
/// coprime with strictly increasing multiplicities.
template <class F>
std::vector<SquarefreeFactor<F>> squarefree_decomposition(const UniPoly<F>& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree decomposition of the zero polynomial");
  if constexpr (field_traits<F>::is_prime_field) {
    // Multiplicities never exceed the degree; requiring p > deg f keeps every one of them invertible.
    if (static_cast<std::uint64_t>(f.degree()) >= field_traits<F>::characteristic(f.leading())) {
      throw std::domain_error("characteristic " + std::to_string(field_traits<F>::characteristic(f.leading())) +
                              " may divide a multiplicity of a degree-" + std::to_string(f.degree()) +
                              " polynomial");
    }
  }
  std::vector<SquarefreeFactor<F>> out;
  UniPoly<F> g = f.monic();
  if (g.degree() == 0) return out;
  UniPoly<F> dg = g.derivative();
  UniPoly<F> a = gcd(g, dg);
  UniPoly<F> b = g / a;
  UniPoly<F> c = dg / a;
  int i = 1;
  while (b.degree() > 0) {
    UniPoly<F> d = c - b.derivative();
    UniPoly<F> h = gcd(b, d);
    if (h.degree() > 0) out.push_back({h, i});
    b = b / h;
    c = d / h;
    ++i;
  }
  return out;
}

/// Newton-form interpolation through (xs[i], ys[i]); abscissae must be distinct.
template <class F>
UniPoly<F> interpolate(std::span<const F> xs, std::span<const F> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
  if (xs.empty()) throw std::invalid_argument("interpolate: no samples");
  using T = field_traits<F>;
  const std::size_t n = xs.size();
  std::vector<F> dd(ys.begin(), ys.end());
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      F den = xs[i] - xs[i - j];
      if (T::is_zero(den)) throw std::invalid_argument("interpolate: repeated abscissa");
      dd[i] = (dd[i] - dd[i - 1]) / den;
    }
  }
  // Horner on the Newton basis.
  std::vector<F> acc{dd[n - 1]};
  for (std::size_t k = n - 1; k-- > 0;) {
    std::vector<F> next(acc.size() + 1, T::zero_like(xs[0]));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i + 1] += acc[i];
      next[i] -= acc[i] * xs[k];
    }
    next[0] += dd[k];
    acc = std::move(next);
  }
  return UniPoly<F>(std::move(acc), xs[0]);
}

template <class F>
UniPoly<F> interpolate(const std::vector<std::pair<F, F>>& samples) {
  std::vector<F> xs, ys;
  for (const auto& [x, y] : samples) {
    xs.push_back(x);
    ys.push_back(y);
  }
  return interpolate<F>(std::span<const F>(xs), std::span<const F>(ys));
}

/// Product of all factors raised to their multiplicities (monic).
template <class F>
UniPoly<F> reassemble(const std::vector<SquarefreeFactor<F>>& parts, const F& like) {
  UniPoly<F> acc = UniPoly<F>::constant(field_traits<F>::one_like(like));
  for (const auto& p : parts) {
    for (int k = 0; k < p.multiplicity; ++k) acc *= p.factor;
  }
  return acc;
}

}  // namespace qlines
