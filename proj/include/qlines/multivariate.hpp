#pragma once
// Sparse multivariate polynomials with lexicographic exponent ordering.

#include "qlines/scalar.hpp"
#include "qlines/univariate.hpp"

#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlines {

using Exponent = std::vector<int>;

template <class F>
class MultiPoly {
  using T = field_traits<F>;
  // Lex order, largest exponent vector first.
  using TermMap = std::map<Exponent, F, std::greater<Exponent>>;

 public:
  MultiPoly(int arity, const F& like) : arity_(arity), zero_(T::zero_like(like)) {
    if (arity < 0) throw std::invalid_argument("negative arity");
  }

  static MultiPoly constant(int arity, const F& c) {
    MultiPoly p(arity, c);
    p.add_term(Exponent(static_cast<std::size_t>(arity), 0), c);
    return p;
  }
  static MultiPoly variable(int arity, int index, const F& like) {
    if (index < 0 || index >= arity) throw std::out_of_range("variable index");
    MultiPoly p(arity, like);
    Exponent e(static_cast<std::size_t>(arity), 0);
    e[static_cast<std::size_t>(index)] = 1;
    p.add_term(e, T::one_like(like));
    return p;
  }
  static MultiPoly monomial(const Exponent& e, const F& c) {
    MultiPoly p(static_cast<int>(e.size()), c);
    p.add_term(e, c);
    return p;
  }

  int arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  const F& zero_element() const { return zero_; }

  F coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? zero_ : it->second;
  }

  /// Adds c * x^e in place; zero coefficients are never stored.
  void add_term(const Exponent& e, const F& c) {
    if (static_cast<int>(e.size()) != arity_) throw std::invalid_argument("exponent arity mismatch");
    for (int k : e) {
      if (k < 0) throw std::invalid_argument("negative exponent");
    }
    if (T::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (T::is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Total degree, -1 for zero.
  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  int degree_in(int var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(var)]);
    return d;
  }

  /// True iff every monomial has total degree d (the zero polynomial qualifies).
  bool is_homogeneous(int d) const {
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      if (s != d) return false;
    }
    return true;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check(b);
    MultiPoly r(a.arity_, a.zero_);
    Exponent e(static_cast<std::size_t>(a.arity_));
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend MultiPoly operator*(MultiPoly a, const F& s) {
    if (T::is_zero(s)) return MultiPoly(a.arity_, a.zero_);
    for (auto& [e, c] : a.terms_) c *= s;
    return a;
  }
  friend MultiPoly operator*(MultiPoly a, long long k) {
    F s = T::from_int(a.zero_, k);
    return std::move(a) * s;
  }

  MultiPoly pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative power");
    MultiPoly r = constant(arity_, T::one_like(zero_));
    MultiPoly b = *this;
    while (k) {
      if (k & 1) r *= b;
      k >>= 1;
      if (k) b *= b;
    }
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.arity_ != b.arity_ || a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib) {
      if (ia->first != ib->first || !(ia->second == ib->second)) return false;
    }
    return true;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  /// Exact value at a point of matching arity.
  F operator()(std::span<const F> point) const {
    if (static_cast<int>(point.size()) != arity_) throw std::invalid_argument("evaluation point arity mismatch");
    F acc = zero_;
    std::vector<std::vector<F>> powers(point.size());
    for (const auto& [e, c] : terms_) {
      F t = c;
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        auto& pw = powers[k];
        if (pw.empty()) pw.push_back(T::one_like(zero_));
        while (static_cast<int>(pw.size()) <= e[k]) pw.push_back(pw.back() * point[k]);
        t *= pw[static_cast<std::size_t>(e[k])];
      }
      acc += t;
    }
    return acc;
  }
  F operator()(std::initializer_list<F> point) const { return (*this)(std::span<const F>(point.begin(), point.size())); }

  MultiPoly partial(int var) const {
    MultiPoly r(arity_, zero_);
    for (const auto& [e, c] : terms_) {
      int k = e[static_cast<std::size_t>(var)];
      if (k == 0) continue;
      Exponent e2 = e;
      --e2[static_cast<std::size_t>(var)];
      r.add_term(e2, c * static_cast<long long>(k));
    }
    return r;
  }

  /// Univariate polynomial in `var` after fixing every other variable to `values[k]`
  /// (the entry at `var` is ignored).
  UniPoly<F> to_univariate(int var, std::span<const F> values) const {
    if (static_cast<int>(values.size()) != arity_) throw std::invalid_argument("specialization arity mismatch");
    int d = std::max(degree_in(var), 0);
    std::vector<F> coeffs(static_cast<std::size_t>(d + 1), zero_);
    for (const auto& [e, c] : terms_) {
      F t = c;
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (static_cast<int>(k) == var) continue;
        for (int i = 0; i < e[k]; ++i) t *= values[k];
      }
      coeffs[static_cast<std::size_t>(e[static_cast<std::size_t>(var)])] += t;
    }
    return UniPoly<F>(std::move(coeffs), zero_);
  }

  /// Substitutes polynomials (all of one common arity) for the variables.
  MultiPoly compose(const std::vector<MultiPoly>& subs) const {
    if (static_cast<int>(subs.size()) != arity_) throw std::invalid_argument("compose arity mismatch");
    if (subs.empty()) return *this;
    const int out_arity = subs.front().arity();
    MultiPoly r(out_arity, zero_);
    std::vector<std::vector<MultiPoly>> powers(subs.size());
    for (const auto& [e, c] : terms_) {
      MultiPoly t = constant(out_arity, c);
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        auto& pw = powers[k];
        if (pw.empty()) pw.push_back(constant(out_arity, T::one_like(zero_)));
        while (static_cast<int>(pw.size()) <= e[k]) pw.push_back(pw.back() * subs[k]);
        t *= pw[static_cast<std::size_t>(e[k])];
      }
      r += t;
    }
    return r;
  }

  template <class G, class Map>
  MultiPoly<G> map_coefficients(const G& like, Map&& fn) const {
    MultiPoly<G> r(arity_, like);
    for (const auto& [e, c] : terms_) r.add_term(e, fn(c));
    return r;
  }

  std::string str(const std::vector<std::string>& names = {}) const {
    if (is_zero()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + T::str(c) + ")";
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        s += "*" + (k < names.size() ? names[k] : "x" + std::to_string(k));
        if (e[k] > 1) s += "^" + std::to_string(e[k]);
      }
    }
    return s;
  }

 private:
  void check(const MultiPoly& o) const {
    if (arity_ != o.arity_) throw std::invalid_argument("MultiPoly arity mismatch");
  }

  int arity_;
  F zero_;
  TermMap terms_;
};

/// MultiPoly as a coefficient ring for the binary-form machinery.
template <class R>
struct ring_traits {
  static R zero_like(const R& x) { return field_traits<R>::zero_like(x); }
  static R from_rational(const R& like, const Rational& q) { return field_traits<R>::from_rational(like, q); }
  static bool is_zero(const R& x) { return field_traits<R>::is_zero(x); }
};

template <class F>
struct ring_traits<MultiPoly<F>> {
  static MultiPoly<F> zero_like(const MultiPoly<F>& x) { return MultiPoly<F>(x.arity(), x.zero_element()); }
  static MultiPoly<F> from_rational(const MultiPoly<F>& like, const Rational& q) {
    return MultiPoly<F>::constant(like.arity(), field_traits<F>::from_rational(like.zero_element(), q));
  }
  static bool is_zero(const MultiPoly<F>& x) { return x.is_zero(); }
};

}  // namespace qlines
