#pragma once
// Binary forms over a commutative ring and the transvectant (Cayley omega) pairing.

#include "qlines/multivariate.hpp"
#include "qlines/scalar.hpp"

#include <stdexcept>
#include <vector>

namespace qlines {

/// a_0 x^n + a_1 x^{n-1} y + ... + a_n y^n. Coefficients live in a commutative ring R
/// (a field, or a polynomial ring when working symbolically).
template <class R>
class BinaryForm {
 public:
  explicit BinaryForm(std::vector<R> coeffs) : a_(std::move(coeffs)) {
    if (a_.empty()) throw std::invalid_argument("binary form needs at least one coefficient");
  }

  int order() const { return static_cast<int>(a_.size()) - 1; }
  const std::vector<R>& coeffs() const { return a_; }
  const R& operator[](int k) const { return a_[static_cast<std::size_t>(k)]; }

  bool is_zero() const {
    for (const auto& c : a_) {
      if (!ring_traits<R>::is_zero(c)) return false;
    }
    return true;
  }

  BinaryForm dx() const {
    const int n = order();
    if (n == 0) return BinaryForm({ring_traits<R>::zero_like(a_[0])});
    std::vector<R> b;
    b.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) b.push_back(a_[static_cast<std::size_t>(k)] * static_cast<long long>(n - k));
    return BinaryForm(std::move(b));
  }

  BinaryForm dy() const {
    const int n = order();
    if (n == 0) return BinaryForm({ring_traits<R>::zero_like(a_[0])});
    std::vector<R> b;
    b.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) b.push_back(a_[static_cast<std::size_t>(k + 1)] * static_cast<long long>(k + 1));
    return BinaryForm(std::move(b));
  }

  /// d^i/dx^i d^j/dy^j
  BinaryForm derivative(int i, int j) const {
    BinaryForm r = *this;
    for (int k = 0; k < i; ++k) r = r.dx();
    for (int k = 0; k < j; ++k) r = r.dy();
    return r;
  }

  friend BinaryForm operator*(const BinaryForm& f, const BinaryForm& g) {
    std::vector<R> c(f.a_.size() + g.a_.size() - 1, ring_traits<R>::zero_like(f.a_[0]));
    for (std::size_t i = 0; i < f.a_.size(); ++i) {
      if (ring_traits<R>::is_zero(f.a_[i])) continue;
      for (std::size_t j = 0; j < g.a_.size(); ++j) c[i + j] += f.a_[i] * g.a_[j];
    }
    return BinaryForm(std::move(c));
  }

  friend BinaryForm operator+(BinaryForm f, const BinaryForm& g) {
    if (f.order() != g.order()) throw std::invalid_argument("adding binary forms of different order");
    for (std::size_t i = 0; i < f.a_.size(); ++i) f.a_[i] += g.a_[i];
    return f;
  }

 private:
  std::vector<R> a_;
};

/// (f, g)_k = sum_i (-1)^i C(k, i) d^k f / dx^{k-i} dy^i * d^k g / dx^i dy^{k-i}.
/// No normalizing factor is applied.
template <class R>
BinaryForm<R> transvectant(const BinaryForm<R>& f, const BinaryForm<R>& g, int k) {
  if (k < 0 || k > f.order() || k > g.order()) throw std::invalid_argument("transvectant index out of range");
  const int order = f.order() + g.order() - 2 * k;
  std::vector<R> zero(static_cast<std::size_t>(order + 1), ring_traits<R>::zero_like(f[0]));
  BinaryForm<R> acc(std::move(zero));
  long long binom = 1;
  for (int i = 0; i <= k; ++i) {
    BinaryForm<R> term = f.derivative(k - i, i) * g.derivative(i, k - i);
    long long sign_binom = (i % 2 == 0) ? binom : -binom;
    std::vector<R> scaled;
    scaled.reserve(term.coeffs().size());
    for (const auto& c : term.coeffs()) scaled.push_back(c * sign_binom);
    acc = acc + BinaryForm<R>(std::move(scaled));
    binom = binom * (k - i) / (i + 1);
  }
  return acc;
}

}  // namespace qlines
