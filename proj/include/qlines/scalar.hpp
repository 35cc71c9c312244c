#pragma once
// Exact scalar fields: arbitrary-precision rationals and prime fields F_p.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qlines {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when operands from two different scalar fields meet.
class FieldMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised on division by zero in an exact field.
class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Smallest modulus accepted for F_p: the elimination pipeline interpolates through
// up to a few thousand sample points and needs every multiplicity below p.
inline constexpr std::uint64_t kMinPrime = 2503;
inline constexpr std::uint64_t kDefaultPrime = 10007;

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

class PrimeField;

/// Residue modulo an odd prime. Always reduced to [0, p).
class Fp {
 public:
  Fp() = default;

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  Fp& operator+=(const Fp& o) {
    check(o);
    v_ += o.v_;
    if (v_ >= p_) v_ -= p_;
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    check(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    check(o);
    v_ = detail::mulmod(v_, o.v_, p_);
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  Fp& operator*=(long long k) {
    bound();
    long long r = k % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    v_ = detail::mulmod(v_, static_cast<std::uint64_t>(r), p_);
    return *this;
  }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend Fp operator*(Fp a, long long k) { return a *= k; }
  friend Fp operator*(long long k, Fp a) { return a *= k; }
  Fp operator-() const {
    bound();
    Fp r = *this;
    r.v_ = v_ == 0 ? 0 : p_ - v_;
    return r;
  }

  friend bool operator==(const Fp& a, const Fp& b) {
    a.check(b);
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  Fp inverse() const {
    bound();
    if (v_ == 0) throw DivisionByZero("inverse of zero in F_p");
    Fp r = *this;
    r.v_ = detail::powmod(v_, p_ - 2, p_);
    return r;
  }

  /// Element of the same field with the given residue.
  Fp make(std::uint64_t v) const {
    bound();
    return Fp(v % p_, p_);
  }

  Fp pow(std::uint64_t e) const {
    bound();
    Fp r = *this;
    r.v_ = detail::powmod(v_, e, p_);
    return r;
  }

 private:
  friend class PrimeField;
  Fp(std::uint64_t v, std::uint64_t p) : v_(v), p_(p) {}

  void bound() const {
    if (p_ == 0) throw FieldMismatch("F_p element used without a field");
  }
  void check(const Fp& o) const {
    if (p_ != o.p_ || p_ == 0) {
      throw FieldMismatch("F_p arithmetic across different moduli (" + std::to_string(p_) + " vs " +
                          std::to_string(o.p_) + ")");
    }
  }

  std::uint64_t v_ = 0;
  std::uint64_t p_ = 0;
};

/// A validated prime modulus; the factory for Fp elements.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p < kMinPrime) {
      throw std::invalid_argument("prime " + std::to_string(p) + " below the minimum " + std::to_string(kMinPrime));
    }
    if (p >= (1ull << 62) || !is_prime(p)) {
      throw std::invalid_argument(std::to_string(p) + " is not a supported odd prime");
    }
  }

  std::uint64_t modulus() const { return p_; }

  Fp operator()(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return Fp(static_cast<std::uint64_t>(r), p_);
  }
  Fp from_unsigned(std::uint64_t v) const { return Fp(v % p_, p_); }
  Fp zero() const { return Fp(0, p_); }
  Fp one() const { return Fp(1, p_); }

  Fp from_integer(const Integer& z) const {
    Integer r = z % p_;
    if (r < 0) r += p_;
    return Fp(static_cast<std::uint64_t>(r), p_);
  }

  /// Reduction of a rational with denominator prime to p.
  Fp from_rational(const Rational& q) const {
    Fp den = from_integer(boost::multiprecision::denominator(q));
    if (den.is_zero()) throw DivisionByZero("denominator divisible by p");
    return from_integer(boost::multiprecision::numerator(q)) / den;
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
};

/// Parses "n" or "n/d" (optional sign, optional surrounding spaces).
inline Rational parse_rational(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t') s.push_back(ch);
  }
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto check_int = [&](const std::string& part) {
    std::size_t i = (part.size() > 0 && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) throw std::invalid_argument("malformed rational literal '" + s + "'");
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') throw std::invalid_argument("malformed rational literal '" + s + "'");
    }
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    check_int(s);
    return Rational(Integer(s[0] == '+' ? s.substr(1) : s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  check_int(num);
  check_int(den);
  Integer d(den[0] == '+' ? den.substr(1) : den);
  if (d == 0) throw DivisionByZero("zero denominator in '" + s + "'");
  Integer n(num[0] == '+' ? num.substr(1) : num);
  if (d < 0) {
    n = -n;
    d = -d;
  }
  return Rational(n, d);
}

inline std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
  return q.str();
}

inline std::string to_string(const Fp& x) { return std::to_string(x.value()); }

/// Uniform access to the field operations needed by the generic algorithms.
/// A "like" argument carries the field identity (the modulus for F_p).
template <class F>
struct field_traits;

template <>
struct field_traits<Rational> {
  static Rational zero_like(const Rational&) { return Rational(0); }
  static Rational one_like(const Rational&) { return Rational(1); }
  static Rational from_int(const Rational&, long long v) { return Rational(v); }
  static Rational from_rational(const Rational&, const Rational& q) { return q; }
  static bool is_zero(const Rational& x) { return x == 0; }
  static Rational inverse(const Rational& x) {
    if (x == 0) throw DivisionByZero("inverse of zero rational");
    return Rational(1) / x;
  }
  static std::string str(const Rational& x) { return to_string(x); }
  static constexpr bool is_prime_field = false;
};

template <>
struct field_traits<Fp> {
  static Fp zero_like(const Fp& x) { return x * 0LL; }
  static Fp one_like(const Fp& x) { return x.make(1); }
  static Fp from_int(const Fp& x, long long v) { return one_like(x) * v; }
  static Fp from_rational(const Fp& x, const Rational& q) {
    auto reduce = [&](const Integer& z) {
      Integer r = z % x.modulus();
      if (r < 0) r += x.modulus();
      return x.make(static_cast<std::uint64_t>(r));
    };
    Fp den = reduce(boost::multiprecision::denominator(q));
    if (den.is_zero()) throw DivisionByZero("denominator divisible by p");
    return reduce(boost::multiprecision::numerator(q)) / den;
  }
  static bool is_zero(const Fp& x) { return x.is_zero(); }
  static Fp inverse(const Fp& x) { return x.inverse(); }
  static std::string str(const Fp& x) { return to_string(x); }
  static constexpr bool is_prime_field = true;
  static std::uint64_t characteristic(const Fp& x) { return x.modulus(); }
};

}  // namespace qlines
