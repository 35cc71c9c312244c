#pragma once
// The closed system of degeneration relations that yields I1(a1^5), with values as
// rational functions of the root order r.

#include "qlines/scalar.hpp"
#include "qlines/univariate.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlines {

/// Reduced p(r)/q(r) with q monic.
class RationalInR {
 public:
  RationalInR() : RationalInR(Rational(0)) {}
  RationalInR(const Rational& c) : num_(UniPoly<Rational>::constant(c)), den_(UniPoly<Rational>::constant(Rational(1))) {
    if (c == 0) num_ = UniPoly<Rational>(Rational(0));
  }
  RationalInR(UniPoly<Rational> num, UniPoly<Rational> den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    reduce();
  }
  static RationalInR r() { return {UniPoly<Rational>::x(Rational(0)), UniPoly<Rational>::constant(Rational(1))}; }

  const UniPoly<Rational>& num() const { return num_; }
  const UniPoly<Rational>& den() const { return den_; }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  Rational constant_value() const {
    if (!is_constant()) throw std::logic_error("value depends on r: " + str());
    return num_.coeff(0);
  }
  Rational operator()(const Rational& r) const {
    Rational d = den_(r);
    if (d == 0) throw std::domain_error("denominator vanishes at r = " + r.str());
    return num_(r) / d;
  }

  friend RationalInR operator+(const RationalInR& a, const RationalInR& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalInR operator*(const RationalInR& a, const RationalInR& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
  friend bool operator==(const RationalInR& a, const RationalInR& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  std::string str() const {
    if (den_.degree() == 0) return poly_str(num_);
    auto wrap = [](const UniPoly<Rational>& p) {
      auto nonzero = std::count_if(p.coeffs().begin(), p.coeffs().end(), [](const Rational& c) { return c != 0; });
      return nonzero <= 1 ? poly_str(p) : "(" + poly_str(p) + ")";
    };
    return wrap(num_) + "/" + wrap(den_);
  }

 private:
  static std::string poly_str(const UniPoly<Rational>& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (int k = p.degree(); k >= 0; --k) {
      Rational c = p.coeff(k);
      if (c == 0) continue;
      const Rational m = c < 0 ? Rational(-c) : c;
      std::string mag = m.str();
      if (!s.empty()) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      std::string mono = k == 0 ? "" : (k == 1 ? "r" : "r^" + std::to_string(k));
      s += k == 0 ? mag : (m == 1 ? mono : mag + "*" + mono);
    }
    return s;
  }
  void reduce() {
    if (num_.is_zero()) {
      den_ = UniPoly<Rational>::constant(Rational(1));
      return;
    }
    auto g = gcd(num_, den_);
    num_ = num_ / g;
    den_ = den_ / g;
    Rational lc = den_.leading();
    num_ = num_ * (1 / lc);
    den_ = den_ * (1 / lc);
  }
  UniPoly<Rational> num_, den_;
};

enum class Insertion { A1, A2, A3, BetaRm2, BetaRm3 };

inline std::string to_string(Insertion x) {
  switch (x) {
    case Insertion::A1: return "a1";
    case Insertion::A2: return "a2";
    case Insertion::A3: return "a3";
    case Insertion::BetaRm2: return "b_{r-2}";
    case Insertion::BetaRm3: return "b_{r-3}";
  }
  return "?";
}

/// I_degree(insertions); only the seven symbols of the system are admitted.
class GWSymbol {
 public:
  GWSymbol(int degree, std::vector<Insertion> ins) : degree_(degree), ins_(std::move(ins)) {
    std::sort(ins_.begin(), ins_.end());
    if (std::find(admitted().begin(), admitted().end(), key()) == admitted().end()) {
      throw std::invalid_argument("symbol " + str() + " is not part of the system");
    }
  }
  int degree() const { return degree_; }
  const std::vector<Insertion>& insertions() const { return ins_; }
  std::string str() const {
    std::string s = "I" + std::to_string(degree_) + "(";
    for (std::size_t i = 0; i < ins_.size();) {
      std::size_t j = i;
      while (j < ins_.size() && ins_[j] == ins_[i]) ++j;
      if (i > 0) s += " ";
      s += to_string(ins_[i]);
      if (j - i > 1) s += "^" + std::to_string(j - i);
      i = j;
    }
    return s + ")";
  }
  friend bool operator<(const GWSymbol& a, const GWSymbol& b) { return a.key() < b.key(); }
  friend bool operator==(const GWSymbol& a, const GWSymbol& b) { return a.key() == b.key(); }

 private:
  using Key = std::pair<int, std::vector<Insertion>>;
  Key key() const { return {degree_, ins_}; }
  static const std::vector<Key>& admitted() {
    using I = Insertion;
    static const std::vector<Key> k = {
        {1, {I::A1, I::A1, I::A1, I::A1, I::A1}}, {1, {I::A1, I::A1, I::A1, I::A2}}, {1, {I::A1, I::A1, I::A3}},
        {1, {I::A1, I::A2, I::A2}},             {0, {I::A1, I::A1, I::BetaRm2}},  {0, {I::A1, I::A1, I::A1, I::BetaRm3}},
        {0, {I::A1, I::A2, I::BetaRm3}},
    };
    return k;
  }
  int degree_;
  std::vector<Insertion> ins_;
};

namespace gw {
using I = Insertion;
inline GWSymbol a1_5() { return {1, {I::A1, I::A1, I::A1, I::A1, I::A1}}; }
inline GWSymbol a1_3_a2() { return {1, {I::A1, I::A1, I::A1, I::A2}}; }
inline GWSymbol a1_2_a3() { return {1, {I::A1, I::A1, I::A3}}; }
inline GWSymbol a1_a2_2() { return {1, {I::A1, I::A2, I::A2}}; }
inline GWSymbol a1_2_b2() { return {0, {I::A1, I::A1, I::BetaRm2}}; }
inline GWSymbol a1_3_b3() { return {0, {I::A1, I::A1, I::A1, I::BetaRm3}}; }
inline GWSymbol a1_a2_b3() { return {0, {I::A1, I::A2, I::BetaRm3}}; }
}  // namespace gw

using GWTable = std::map<GWSymbol, RationalInR>;

/// The directly computed values: two degree-0 invariants 1/r, and twice the flex
/// and bitangent counts.
inline GWTable base_values() {
  const RationalInR inv_r{UniPoly<Rational>::constant(Rational(1)), UniPoly<Rational>::x(Rational(0))};
  return {{gw::a1_2_b2(), inv_r}, {gw::a1_a2_b3(), inv_r}, {gw::a1_2_a3(), Rational(2 * 45)}, {gw::a1_a2_2(), Rational(2 * 120)}};
}

struct ChainResult {
  GWTable values;
  std::vector<std::string> trace;
};

/// Solves the three relations bottom-up from the base values.
inline ChainResult evaluate_chain() {
  ChainResult out{base_values(), {}};
  auto& v = out.values;
  const RationalInR r = RationalInR::r();
  auto record = [&](const GWSymbol& s, const std::string& rule, const RationalInR& val) {
    v[s] = val;
    out.trace.push_back(s.str() + " = " + rule + " = " + val.str());
  };
  for (const auto& [s, val] : base_values()) out.trace.push_back(s.str() + " = " + val.str() + " (base)");

  record(gw::a1_3_b3(), "r " + gw::a1_2_b2().str() + " " + gw::a1_a2_b3().str(), r * v.at(gw::a1_2_b2()) * v.at(gw::a1_a2_b3()));
  record(gw::a1_3_a2(),
         "r " + gw::a1_2_b2().str() + " " + gw::a1_a2_2().str() + " + r " + gw::a1_2_a3().str() + " " + gw::a1_a2_b3().str(),
         r * v.at(gw::a1_2_b2()) * v.at(gw::a1_a2_2()) + r * v.at(gw::a1_2_a3()) * v.at(gw::a1_a2_b3()));
  record(gw::a1_5(),
         "r " + gw::a1_2_b2().str() + " " + gw::a1_3_a2().str() + " + r " + gw::a1_2_a3().str() + " " + gw::a1_3_b3().str(),
         r * v.at(gw::a1_2_b2()) * v.at(gw::a1_3_a2()) + r * v.at(gw::a1_2_a3()) * v.at(gw::a1_3_b3()));
  return out;
}

/// Evaluates I1(a1^5) at each r; r < 4 is rejected.
inline bool r_independence_check(const std::vector<long long>& r_values) {
  for (long long r : r_values) {
    if (r < 4) throw std::invalid_argument("r must be at least 4, got " + std::to_string(r));
  }
  const auto chain = evaluate_chain();
  const auto& top = chain.values.at(gw::a1_5());
  return std::all_of(r_values.begin(), r_values.end(), [&](long long r) { return top(Rational(r)) == 420; });
}

}  // namespace qlines
