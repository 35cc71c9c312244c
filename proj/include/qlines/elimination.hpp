#pragma once
// Elimination in two variables over F_p by evaluation and interpolation.

#include "qlines/multivariate.hpp"
#include "qlines/scalar.hpp"
#include "qlines/univariate.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace qlines {

class FieldTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Runs body(i) for i in [0, n) on up to `threads` workers. Each index writes only its
// own slot, so the outcome does not depend on the schedule.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail

/// Dense bivariate interpolation on the grid xs x ys; values[i][j] = P(xs[i], ys[j]).
/// Returns P with deg_x < xs.size(), deg_y < ys.size().
inline MultiPoly<Fp> interpolate_grid(const std::vector<Fp>& xs, const std::vector<Fp>& ys,
                                      const std::vector<std::vector<Fp>>& values) {
  const Fp zero = xs.at(0) * 0LL;
  // Interpolate each row in y, then each y-coefficient column in x.
  std::vector<UniPoly<Fp>> rows;
  rows.reserve(xs.size());
  for (const auto& row : values) rows.push_back(interpolate<Fp>(std::span<const Fp>(ys), std::span<const Fp>(row)));
  MultiPoly<Fp> out(2, zero);
  for (std::size_t j = 0; j < ys.size(); ++j) {
    std::vector<Fp> col;
    col.reserve(xs.size());
    for (const auto& r : rows) col.push_back(r.coeff(static_cast<int>(j)));
    UniPoly<Fp> cx = interpolate<Fp>(std::span<const Fp>(xs), std::span<const Fp>(col));
    for (int i = 0; i <= cx.degree(); ++i) out.add_term({i, static_cast<int>(j)}, cx.coeff(i));
  }
  return out;
}

struct EliminationStats {
  int degree_bound = 0;
  int samples_used = 0;
  int samples_rejected = 0;  // leading coefficient vanished at the sample
};

/// R(s) = Res_x(f, g) for bivariate f, g over F_p, where x is `eliminated_var` and s the
/// other variable. R is sampled at deg(f) * deg(g) + 1 points s = 0, 1, 2, ... (skipping
/// samples where a leading coefficient in x vanishes) and interpolated.
inline UniPoly<Fp> resultant_bivar_elim(const MultiPoly<Fp>& f, const MultiPoly<Fp>& g, int eliminated_var,
                                        unsigned threads = 1, EliminationStats* stats = nullptr) {
  if (f.arity() != 2 || g.arity() != 2) throw std::invalid_argument("resultant_bivar_elim expects bivariate input");
  if (eliminated_var != 0 && eliminated_var != 1) throw std::invalid_argument("eliminated variable must be 0 or 1");
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant of the zero polynomial");
  const Fp zero = f.zero_element();
  const std::uint64_t p = zero.modulus();
  const int kept = 1 - eliminated_var;
  const int bound = f.total_degree() * g.total_degree();
  const int df = f.degree_in(eliminated_var), dg = g.degree_in(eliminated_var);
  const std::size_t needed = static_cast<std::size_t>(bound) + 1;

  // Choose sample abscissae where neither leading coefficient in x vanishes.
  MultiPoly<Fp> lcf(2, zero), lcg(2, zero);
  for (const auto& [e, c] : f.terms())
    if (e[static_cast<std::size_t>(eliminated_var)] == df) lcf.add_term(e, c);
  for (const auto& [e, c] : g.terms())
    if (e[static_cast<std::size_t>(eliminated_var)] == dg) lcg.add_term(e, c);
  std::vector<Fp> samples;
  int rejected = 0;
  for (std::uint64_t s = 0; samples.size() < needed; ++s) {
    if (s >= p) {
      throw FieldTooSmall("F_" + std::to_string(p) + " has too few usable samples for an elimination of degree " +
                          std::to_string(bound));
    }
    Fp sv = zero.make(s);
    std::vector<Fp> pt(2, sv);
    if (lcf(std::span<const Fp>(pt)).is_zero() || lcg(std::span<const Fp>(pt)).is_zero()) {
      ++rejected;
      continue;
    }
    samples.push_back(sv);
  }

  std::vector<Fp> values(needed, zero);
  detail::parallel_for(needed, threads, [&](std::size_t i) {
    std::vector<Fp> pt(2, zero);
    pt[static_cast<std::size_t>(kept)] = samples[i];
    UniPoly<Fp> fu = f.to_univariate(eliminated_var, pt);
    UniPoly<Fp> gu = g.to_univariate(eliminated_var, pt);
    values[i] = resultant(fu, gu);
  });
  if (stats) *stats = {bound, static_cast<int>(needed), rejected};
  return interpolate<Fp>(std::span<const Fp>(samples), std::span<const Fp>(values));
}

}  // namespace qlines
