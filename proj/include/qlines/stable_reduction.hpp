#pragma once
// Limits of the five intersection points along arcs of lines approaching a simple
// flex line, by the case table and by a high-precision numerical oracle.

#include "qlines/binary_quintic.hpp"
#include "qlines/elimination.hpp"
#include "qlines/multivariate.hpp"
#include "qlines/scalar.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qlines {

/// Truncated power series sum_{k < order} c_k t^k.
struct Series {
  std::vector<Rational> coeffs;  // may be shorter than order; missing terms are 0
  int order = 0;

  Rational coeff(int k) const {
    return k < static_cast<int>(coeffs.size()) ? coeffs[static_cast<std::size_t>(k)] : Rational(0);
  }
  /// Index of the first nonzero coefficient below the order, if any.
  std::optional<int> valuation() const {
    for (int k = 0; k < std::min<int>(order, static_cast<int>(coeffs.size())); ++k) {
      if (coeffs[static_cast<std::size_t>(k)] != 0) return k;
    }
    return std::nullopt;
  }
};

/// s(u(t)) truncated to min(order of s, order of u). u must have u(0) = 0.
inline Series compose(const Series& s, const Series& u) {
  if (u.coeff(0) != 0) throw std::invalid_argument("composition needs u(0) = 0");
  const int order = std::min(s.order, u.order);
  std::vector<Rational> out(static_cast<std::size_t>(order), Rational(0));
  std::vector<Rational> pw(static_cast<std::size_t>(order), Rational(0));  // u^k
  if (order > 0) pw[0] = 1;
  for (int k = 0; k < order; ++k) {
    if (k > 0) {
      std::vector<Rational> next(static_cast<std::size_t>(order), Rational(0));
      for (int i = 0; i < order; ++i) {
        if (pw[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 1; i + j < order; ++j) next[static_cast<std::size_t>(i + j)] += pw[static_cast<std::size_t>(i)] * u.coeff(j);
      }
      pw = std::move(next);
    }
    const Rational c = s.coeff(k);
    if (c == 0) continue;
    for (int i = 0; i < order; ++i) out[static_cast<std::size_t>(i)] += c * pw[static_cast<std::size_t>(i)];
  }
  return {out, order};
}

/// s(t^k).
inline Series base_change(const Series& s, int k) {
  if (k < 1) throw std::invalid_argument("base change exponent must be positive");
  std::vector<Rational> out(static_cast<std::size_t>(s.order * k), Rational(0));
  for (int i = 0; i < static_cast<int>(s.coeffs.size()) && i < s.order; ++i) out[static_cast<std::size_t>(i * k)] = s.coeffs[static_cast<std::size_t>(i)];
  return {out, s.order * k};
}

/// The arc of lines x2 = alpha(t) x0 + beta(t) x1.
class ArcSpec {
 public:
  ArcSpec(Series alpha, Series beta) : alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (alpha_.coeff(0) != 0 || beta_.coeff(0) != 0) throw std::invalid_argument("arc must satisfy alpha(0) = beta(0) = 0");
    n_ = alpha_.valuation();
    m_ = beta_.valuation();
    if (!n_ && !m_) throw std::invalid_argument("both series vanish to the truncation order");
    int need = std::max(n_ ? 3 * *n_ : 0, m_ ? 2 * *m_ : 0);
    if (alpha_.order <= need || beta_.order <= need) {
      throw std::invalid_argument("truncation order " + std::to_string(std::min(alpha_.order, beta_.order)) +
                                  " does not exceed max(3n, 2m) = " + std::to_string(need));
    }
  }

  /// alpha = a0 t^n, beta = b0 t^m, truncated just past what the table needs.
  static ArcSpec monomial(const Rational& a0, int n, const Rational& b0, int m) {
    int order = std::max(a0 != 0 ? 3 * n : 0, b0 != 0 ? 2 * m : 0) + 1;
    Series a{std::vector<Rational>(static_cast<std::size_t>(order), Rational(0)), order};
    Series b = a;
    if (a0 != 0) a.coeffs.at(static_cast<std::size_t>(n)) = a0;
    if (b0 != 0) b.coeffs.at(static_cast<std::size_t>(m)) = b0;
    return ArcSpec(a, b);
  }

  const Series& alpha() const { return alpha_; }
  const Series& beta() const { return beta_; }
  std::optional<int> n() const { return n_; }
  std::optional<int> m() const { return m_; }
  Rational alpha0() const { return n_ ? alpha_.coeff(*n_) : Rational(0); }
  Rational beta0() const { return m_ ? beta_.coeff(*m_) : Rational(0); }

  ArcSpec reparametrized(const Series& u) const { return ArcSpec(compose(alpha_, u), compose(beta_, u)); }
  ArcSpec base_changed(int k) const { return ArcSpec(base_change(alpha_, k), base_change(beta_, k)); }

 private:
  Series alpha_, beta_;
  std::optional<int> n_, m_;
};

enum class ArcCase { BetaDominant, AlphaDominant, IntermediateHarmonic, IntermediateEquianharmonic, Balanced };

inline std::string to_string(ArcCase c) {
  switch (c) {
    case ArcCase::BetaDominant: return "i";
    case ArcCase::AlphaDominant: return "ii";
    case ArcCase::IntermediateHarmonic: return "iii-1728";
    case ArcCase::IntermediateEquianharmonic: return "iii-0";
    case ArcCase::Balanced: return "iv";
  }
  return "?";
}

inline ArcCase arc_case(const ArcSpec& arc) {
  if (!arc.n()) return ArcCase::BetaDominant;
  if (!arc.m()) return ArcCase::AlphaDominant;
  const int n = *arc.n(), m = *arc.m();
  if (m <= n) return ArcCase::BetaDominant;
  if (m >= 2 * n) return ArcCase::AlphaDominant;
  if (3 * n < 2 * m) return ArcCase::IntermediateHarmonic;
  if (3 * n > 2 * m) return ArcCase::IntermediateEquianharmonic;
  return ArcCase::Balanced;
}

/// j of the limit in the balanced case as a function of (alpha0^3 : beta0^2).
inline std::optional<Rational> balanced_j(const Rational& a3, const Rational& b2) {
  Rational den = 4 * a3 + 27 * b2;
  if (den == 0) return std::nullopt;
  return 1728 * 4 * a3 / den;
}

/// Limit configuration: OneDouble with its j, or TwoDoubles. `orientation` is the
/// sign of the flex term in the normal form (see FlexNormalForm); -1 flips (a0, b0).
inline ConfigClass<Rational> arc_limit(const ArcSpec& arc, int orientation = 1) {
  if (orientation != 1 && orientation != -1) throw std::invalid_argument("orientation must be +1 or -1");
  switch (arc_case(arc)) {
    case ArcCase::BetaDominant:
    case ArcCase::IntermediateEquianharmonic: return OneDouble<Rational>{Rational(0)};
    case ArcCase::AlphaDominant:
    case ArcCase::IntermediateHarmonic: return OneDouble<Rational>{Rational(1728)};
    case ArcCase::Balanced: {
      Rational a = orientation * arc.alpha0(), b = orientation * arc.beta0();
      auto j = balanced_j(a * a * a, b * b);
      if (!j) return TwoDoubles{};
      return OneDouble<Rational>{*j};
    }
  }
  throw std::logic_error("unreachable arc case");
}

/// The point (alpha0^3 : beta0^2) where a balanced arc meets the last exceptional curve.
inline std::pair<Rational, Rational> exceptional_coordinate(const ArcSpec& arc) {
  if (arc_case(arc) != ArcCase::Balanced) throw std::invalid_argument("exceptional coordinate needs a balanced arc (3n = 2m)");
  Rational a = arc.alpha0(), b = arc.beta0();
  return {a * a * a, b * b};
}

// ---------------------------------------------------------------------------
// Numerical oracle

using Real = boost::multiprecision::cpp_bin_float_100;
using Complex = boost::multiprecision::cpp_complex_100;

/// The flex normal form s * x0^3 (x1 - x0) x1 + x2 f4(x0, x1, x2) with f4(0,1,0) = 1.
/// The default sign s = 1 is the orientation in which the balanced limit is
/// 1728 * 4 a^3 / (4 a^3 + 27 b^2); s = -1 replaces (a, b) by (-a, -b).
struct FlexNormalForm {
  MultiPoly<Rational> f4;
  int sign = 1;

  explicit FlexNormalForm(MultiPoly<Rational> quartic, int s = 1) : f4(std::move(quartic)), sign(s) {
    if (f4.arity() != 3 || !f4.is_homogeneous(4) || f4.is_zero()) throw std::invalid_argument("f4 must be a ternary quartic");
    if (f4.coefficient({0, 4, 0}) != 1) throw std::invalid_argument("normal form needs f4(0,1,0) = 1");
    if (s != 1 && s != -1) throw std::invalid_argument("orientation sign must be +1 or -1");
  }

  /// x1^4 + x0 x1^2 x2
  static FlexNormalForm sample(int s = 1) {
    MultiPoly<Rational> q(3, Rational(0));
    q.add_term({0, 4, 0}, Rational(1));
    q.add_term({1, 2, 1}, Rational(1));
    return FlexNormalForm(q, s);
  }
};

enum class NumericStatus { Converged, Diverged, Ambiguous };

inline std::string to_string(NumericStatus s) {
  switch (s) {
    case NumericStatus::Converged: return "converged";
    case NumericStatus::Diverged: return "diverged";
    case NumericStatus::Ambiguous: return "ambiguous";
  }
  return "?";
}

struct NumericLimit {
  NumericStatus status = NumericStatus::Ambiguous;
  double j = 0;
  double error_estimate = 0;
  int points_used = 0;
  std::vector<std::pair<double, double>> samples;  // (t, j(t)) at unambiguous schedule points
};

namespace detail {

inline Real to_real(const Rational& q) {
  return Real(boost::multiprecision::numerator(q)) / Real(boost::multiprecision::denominator(q));
}

// Coefficients (in x0 with x1 = 1, low to high) of the restricted quintic after the
// substitution x1 -> x1 + x0 / 2, which keeps the root (1 : 0) finite near t = 0.
inline std::vector<Real> arc_quintic(const FlexNormalForm& nf, const Real& al, const Real& be) {
  // Linear forms in (x0, x1) as pairs (coefficient of x0, coefficient of x1).
  using Lin = std::pair<Real, Real>;
  const Real h = Real(1) / 2;
  const Lin X0{1, 0}, X1{h, 1};
  const Lin X2{al * X0.first + be * X1.first, al * X0.second + be * X1.second};
  auto mul = [](const std::vector<Real>& p, const Lin& l) {  // p in x0-degree order
    std::vector<Real> r(p.size() + 1, Real(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
      r[i + 1] += p[i] * l.first;  // x0 raises the x0 degree
      r[i] += p[i] * l.second;
    }
    return r;
  };
  std::vector<Real> acc(6, Real(0));
  auto add = [&](const std::vector<Real>& p, const Real& c) {
    for (std::size_t i = 0; i < p.size(); ++i) acc[i] += c * p[i];
  };
  // s * x0^3 (x1 - x0) x1
  {
    std::vector<Real> p{Real(1)};
    p = mul(mul(mul(p, X0), X0), X0);
    p = mul(p, Lin{X1.first - 1, X1.second});
    p = mul(p, X1);
    add(p, Real(nf.sign));
  }
  for (const auto& [e, c] : nf.f4.terms()) {
    std::vector<Real> p{Real(1)};
    for (int k = 0; k < e[0]; ++k) p = mul(p, X0);
    for (int k = 0; k < e[1]; ++k) p = mul(p, X1);
    for (int k = 0; k < e[2]; ++k) p = mul(p, X2);
    p = mul(p, X2);
    add(p, to_real(c));
  }
  return acc;
}

// All complex roots of a polynomial (low-to-high coefficients) by Aberth iteration.
inline std::vector<Complex> polynomial_roots(const std::vector<Real>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1 || c.back() == 0) throw std::invalid_argument("root finder needs a nonconstant polynomial of full degree");
  std::vector<Complex> a;
  for (const auto& x : c) a.emplace_back(x / c.back());
  auto eval = [&](const Complex& z, Complex& dp) {
    Complex p = a[static_cast<std::size_t>(n)];
    dp = Complex(0);
    for (int k = n - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + a[static_cast<std::size_t>(k)];
    }
    return p;
  };
  Real radius = 0;
  for (int k = 0; k < n; ++k) radius = std::max(radius, Real(abs(a[static_cast<std::size_t>(k)])));
  radius = 1 + radius;
  std::vector<Complex> z;
  for (int k = 0; k < n; ++k) {
    Real ang = 2 * boost::math::constants::pi<Real>() * (Real(k) + Real(0.25)) / n;
    z.emplace_back(radius * cos(ang) / 2, radius * sin(ang) / 2);
  }
  const Real eps = Real("1e-90");
  for (int iter = 0; iter < 2000; ++iter) {
    Real worst = 0;
    for (int i = 0; i < n; ++i) {
      Complex dp;
      Complex p = eval(z[static_cast<std::size_t>(i)], dp);
      if (p == Complex(0)) continue;
      Complex ratio = p / dp;
      Complex s(0);
      for (int j = 0; j < n; ++j) {
        if (j != i) s += Complex(1) / (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
      }
      Complex w = ratio / (Complex(1) - ratio * s);
      z[static_cast<std::size_t>(i)] -= w;
      worst = std::max(worst, Real(abs(w) / (1 + abs(z[static_cast<std::size_t>(i)]))));
    }
    if (worst < eps) break;
  }
  return z;
}

inline Complex cross_ratio(const Complex& a, const Complex& b, const Complex& c, const Complex& d) {
  return (a - c) * (b - d) / ((a - d) * (b - c));
}

inline Complex j_of(const Complex& l) {
  Complex s = l * l - l + Complex(1);
  Complex d = l * (l - Complex(1));
  return Complex(256) * s * s * s / (d * d);
}

struct JSample {
  bool unambiguous = false;
  Real j;
};

// j of the four points left after merging the colliding pair. The colliding pair
// minimizes max |CR(p_i, p_j; p_k, p_l) - 1| over the other points.
inline JSample j_at(const FlexNormalForm& nf, const ArcSpec& arc, const Real& t) {
  auto eval = [&](const Series& s) {
    Real acc = 0, pw = 1;
    for (int k = 0; k < s.order; ++k) {
      if (k < static_cast<int>(s.coeffs.size()) && s.coeffs[static_cast<std::size_t>(k)] != 0) {
        acc += to_real(s.coeffs[static_cast<std::size_t>(k)]) * pw;
      }
      pw *= t;
    }
    return acc;
  };
  auto roots = polynomial_roots(arc_quintic(nf, eval(arc.alpha()), eval(arc.beta())));
  std::vector<std::pair<Real, std::pair<int, int>>> scores;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      Real worst = 0;
      for (int k = 0; k < 5; ++k) {
        for (int l = 0; l < 5; ++l) {
          if (k == l || k == i || k == j || l == i || l == j) continue;
          auto cr = cross_ratio(roots[static_cast<std::size_t>(i)], roots[static_cast<std::size_t>(j)],
                                roots[static_cast<std::size_t>(k)], roots[static_cast<std::size_t>(l)]);
          worst = std::max(worst, Real(abs(cr - Complex(1))));
        }
      }
      scores.push_back({worst, {i, j}});
    }
  }
  std::sort(scores.begin(), scores.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  JSample out;
  out.unambiguous = scores[0].first < Real("0.1") * scores[1].first;
  int drop = scores[0].second.second;
  std::vector<Complex> pts;
  for (int k = 0; k < 5; ++k) {
    if (k != drop) pts.push_back(roots[static_cast<std::size_t>(k)]);
  }
  out.j = real(j_of(cross_ratio(pts[0], pts[1], pts[2], pts[3])));
  return out;
}

}  // namespace detail

struct NumericOptions {
  std::vector<double> schedule{1e-3, 1e-4, 1e-5, 1e-6, 1e-7};
  double tolerance = 1e-6;  // on the extrapolation error, relative away from 0
  unsigned threads = 1;
  int max_refinements = 6;
  double margin = 0.01;  // converged needs error_estimate <= margin * tolerance * scale
};

namespace detail {

// Neville tableau at t = 0 over all points. The error estimate is the larger of the
// change between the two highest orders and the shift from dropping the largest t.
inline std::pair<Real, Real> extrapolate_to_zero(const std::vector<Real>& ts, const std::vector<Real>& vs) {
  auto neville = [](const Real* t, const Real* v, std::size_t n, Real* second) {
    std::vector<Real> p(v, v + n);
    *second = p.back();
    for (std::size_t level = 1; level < n; ++level) {
      for (std::size_t i = n - 1; i >= level; --i) p[i] = (t[i - level] * p[i] - t[i] * p[i - 1]) / (t[i - level] - t[i]);
      if (level + 1 < n) *second = p.back();
    }
    return p.back();
  };
  Real second, unused;
  Real top = neville(ts.data(), vs.data(), ts.size(), &second);
  Real tail = neville(ts.data() + 1, vs.data() + 1, ts.size() - 1, &unused);
  Real e1 = abs(top - second), e2 = abs(top - tail);
  return {top, e1 > e2 ? e1 : e2};
}

}  // namespace detail

/// Evaluates the arc family on the schedule and extrapolates j to t = 0 (Neville in t).
/// Ambiguous clustering or an unconverged extrapolation extends the schedule by t / 10
/// steps; the extrapolation then uses the smallest schedule.size() clear points.
inline NumericLimit arc_limit_numeric(const FlexNormalForm& nf, const ArcSpec& arc, const NumericOptions& opt = {}) {
  const auto& schedule = opt.schedule;
  if (schedule.empty()) throw std::invalid_argument("empty t schedule");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] > 0) || (i > 0 && !(schedule[i] < schedule[i - 1]))) {
      throw std::invalid_argument("t schedule must be positive and strictly decreasing");
    }
  }
  std::vector<double> ts_all = schedule;
  std::vector<detail::JSample> js(ts_all.size());
  detail::parallel_for(ts_all.size(), opt.threads, [&](std::size_t i) { js[i] = detail::j_at(nf, arc, Real(ts_all[i])); });
  auto refine = [&] {
    ts_all.push_back(ts_all.back() / 10);
    js.push_back(detail::j_at(nf, arc, Real(ts_all.back())));
  };
  auto clear_count = [&] { return std::count_if(js.begin(), js.end(), [](const auto& s) { return s.unambiguous; }); };
  int extra = 0;
  for (; clear_count() < 4 && extra < opt.max_refinements; ++extra) refine();
  if (clear_count() == 0) throw std::runtime_error("root clustering ambiguous at every t in the schedule");

  const std::size_t window = std::max<std::size_t>(schedule.size(), 4);
  while (true) {
    NumericLimit out;
    std::vector<Real> ts, vs;
    for (std::size_t i = 0; i < ts_all.size(); ++i) {
      if (!js[i].unambiguous) continue;
      ts.push_back(Real(ts_all[i]));
      vs.push_back(js[i].j);
      out.samples.emplace_back(ts_all[i], static_cast<double>(js[i].j));
    }
    if (ts.size() > window) {
      ts.erase(ts.begin(), ts.end() - static_cast<std::ptrdiff_t>(window));
      vs.erase(vs.begin(), vs.end() - static_cast<std::ptrdiff_t>(window));
    }
    out.points_used = static_cast<int>(ts.size());
    if (ts.size() < 4) {
      out.status = NumericStatus::Ambiguous;
      out.j = static_cast<double>(vs.back());
      return out;
    }
    // |j| growing by orders of magnitude along the schedule: the limit is the
    // two-double-point configuration.
    bool growing = true;
    for (std::size_t i = 1; i < vs.size(); ++i) growing = growing && abs(vs[i]) > abs(vs[i - 1]);
    if (growing && abs(vs.back()) > 100 * abs(vs.front())) {
      out.status = NumericStatus::Diverged;
      out.j = static_cast<double>(vs.back());
      return out;
    }
    auto [j, err] = detail::extrapolate_to_zero(ts, vs);
    out.j = static_cast<double>(j);
    out.error_estimate = static_cast<double>(err);
    bool converged = out.error_estimate <= opt.margin * opt.tolerance * std::max(1.0, std::abs(out.j));
    out.status = converged ? NumericStatus::Converged : NumericStatus::Ambiguous;
    if (converged || extra >= opt.max_refinements) return out;
    refine();
    ++extra;
  }
}

/// Agreement with the 1e-6 rule: absolute when |expected| < 1, relative otherwise.
inline bool j_agrees(double numeric, double expected, double tol = 1e-6) {
  double scale = std::abs(expected) < 1 ? 1.0 : std::abs(expected);
  return std::abs(numeric - expected) <= tol * scale;
}

}  // namespace qlines
