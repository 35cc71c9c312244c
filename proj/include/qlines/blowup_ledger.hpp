#pragma once
// Intersection numbers on the dual plane blown up three times over each cusp of the
// dual curve, and the degree of the moduli map computed from them.

#include "qlines/matrix.hpp"
#include "qlines/plane_curve.hpp"
#include "qlines/scalar.hpp"

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qlines {

/// Coefficient of the strict transform of the dual curve in the pullback of the
/// discriminant. Taken as given: the map is unramified over a general point of it.
inline const Rational kStrictTransformCoefficient{1};

/// Discriminant self-intersection on the weighted plane, as used by the ledger.
inline Rational discriminant_square() { return Rational(2, 3); }

/// Basis D~, then (E1, E2, E3) for each cusp.
class Ledger {
 public:
  explicit Ledger(int n_cusps, const Rational& strict_square, const std::array<Rational, 3>& e_squares = {-3, -2, -1})
      : n_(n_cusps), pairing_(static_cast<std::size_t>(1 + 3 * n_cusps), static_cast<std::size_t>(1 + 3 * n_cusps), Rational(0)) {
    if (n_cusps < 1) throw std::invalid_argument("ledger needs at least one cusp");
    pairing_(0, 0) = strict_square;
    for (int i = 0; i < n_cusps; ++i) {
      for (int k = 1; k <= 3; ++k) pairing_(e(i, k), e(i, k)) = e_squares[static_cast<std::size_t>(k - 1)];
      set(e(i, 3), e(i, 1), 1);
      set(e(i, 3), e(i, 2), 1);
      set(e(i, 3), 0, 1);
    }
  }

  int cusps() const { return n_; }
  std::size_t rank() const { return pairing_.rows(); }
  /// Basis index of E_k over cusp i (k = 1, 2, 3).
  std::size_t e(int i, int k) const {
    if (i < 0 || i >= n_ || k < 1 || k > 3) throw std::out_of_range("exceptional curve index");
    return static_cast<std::size_t>(1 + 3 * i + (k - 1));
  }
  const Rational& operator()(std::size_t x, std::size_t y) const { return pairing_(x, y); }
  void set(std::size_t x, std::size_t y, const Rational& v) {
    pairing_(x, y) = v;
    pairing_(y, x) = v;
  }
  const Matrix<Rational>& pairing() const { return pairing_; }

 private:
  int n_;
  Matrix<Rational> pairing_;
};

struct DivisorClass {
  std::vector<Rational> coeffs;  // in the ledger basis
};

/// Intersection numbers produced by blowing up points in sequence. A blow-up at a
/// point where curve k has multiplicity m_k lowers C_k . C_l by m_k m_l and adds
/// an exceptional curve E with E^2 = -1 and E . C_k = m_k.
class BlowupSimulator {
 public:
  int add_curve(const std::string& name, const Rational& square) {
    names_.push_back(name);
    int id = static_cast<int>(names_.size()) - 1;
    pair_[{id, id}] = square;
    return id;
  }
  int blow_up(const std::string& name, const std::map<int, int>& multiplicities) {
    for (const auto& [a, ma] : multiplicities) {
      for (const auto& [b, mb] : multiplicities) {
        if (a <= b) pair_[{a, b}] -= Rational(ma * mb);
      }
    }
    int ex = add_curve(name, Rational(-1));
    for (const auto& [a, ma] : multiplicities) pair_[{a, ex}] = Rational(ma);
    return ex;
  }
  Rational operator()(int a, int b) const {
    auto it = pair_.find({std::min(a, b), std::max(a, b)});
    return it == pair_.end() ? Rational(0) : it->second;
  }

 private:
  std::vector<std::string> names_;
  std::map<std::pair<int, int>, Rational> pair_;
};

/// Blows up each cusp of a curve of degree `dual_degree`: the cusp (multiplicity 2),
/// then the point where the strict transform is tangent to E1, then the triple
/// point of D~, E1, E2. Checks the result against the ledger block and D~^2.
inline void verify_ledger_by_blowups(const Ledger& l, int dual_degree) {
  BlowupSimulator sim;
  int d = sim.add_curve("D", Rational(dual_degree * dual_degree));
  for (int i = 0; i < l.cusps(); ++i) {
    int e1 = sim.blow_up("E1", {{d, 2}});
    int e2 = sim.blow_up("E2", {{d, 1}, {e1, 1}});
    int e3 = sim.blow_up("E3", {{d, 1}, {e1, 1}, {e2, 1}});
    const std::array<int, 4> ids{d, e1, e2, e3};
    const std::array<std::size_t, 4> idx{0, l.e(i, 1), l.e(i, 2), l.e(i, 3)};
    for (std::size_t x = 1; x < 4; ++x) {
      for (std::size_t y = 0; y < 4; ++y) {
        if (sim(ids[x], ids[y]) != l(idx[x], idx[y])) {
          throw std::logic_error("blow-up bookkeeping disagrees with the ledger at cusp " + std::to_string(i));
        }
      }
    }
  }
  if (sim(d, d) != l(0, 0)) throw std::logic_error("blow-up bookkeeping gives D~^2 = " + sim(d, d).str() + ", ledger has " + l(0, 0).str());
}

/// The ledger for n cusps, D~^2 = 130. With 45 cusps, cross-checked against the
/// blow-up bookkeeping 20^2 - 45 (2^2 + 1 + 1).
inline Ledger build_ledger(int n_cusps) {
  Ledger l(n_cusps, Rational(130));
  const auto pc = plucker_counts(5);
  if (n_cusps == pc.flexes) verify_ledger_by_blowups(l, pc.dual_degree);
  return l;
}

/// (a, b, c) with (D~ + a E1 + b E2 + c E3) . E_k = 0, 0, delta_sq for k = 1, 2, 3,
/// read off the first cusp's block.
inline std::array<Rational, 3> solve_pullback_multiplicities(const Ledger& l, const Rational& delta_sq = discriminant_square()) {
  Matrix<Rational> m(3, 3, Rational(0));
  std::vector<Rational> rhs(3, Rational(0));
  const std::array<Rational, 3> target{Rational(0), Rational(0), delta_sq};
  for (int k = 1; k <= 3; ++k) {
    for (int j = 1; j <= 3; ++j) m(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(j - 1)) = l(l.e(0, j), l.e(0, k));
    rhs[static_cast<std::size_t>(k - 1)] = target[static_cast<std::size_t>(k - 1)] - kStrictTransformCoefficient * l(0, l.e(0, k));
  }
  auto x = m.solve(rhs);
  return {x[0], x[1], x[2]};
}

/// D~ + sum over cusps of (a E1 + b E2 + c E3).
inline DivisorClass pullback_class(const Ledger& l, const std::array<Rational, 3>& abc) {
  DivisorClass c{std::vector<Rational>(l.rank(), Rational(0))};
  c.coeffs[0] = kStrictTransformCoefficient;
  for (int i = 0; i < l.cusps(); ++i) {
    for (int k = 1; k <= 3; ++k) c.coeffs[l.e(i, k)] = abc[static_cast<std::size_t>(k - 1)];
  }
  return c;
}

inline Rational self_intersection(const DivisorClass& c, const Ledger& l) {
  if (c.coeffs.size() != l.rank()) throw std::invalid_argument("class and ledger have different rank");
  Rational s = 0;
  for (std::size_t x = 0; x < l.rank(); ++x) {
    if (c.coeffs[x] == 0) continue;
    for (std::size_t y = 0; y < l.rank(); ++y) {
      if (c.coeffs[y] != 0 && l(x, y) != 0) s += c.coeffs[x] * c.coeffs[y] * l(x, y);
    }
  }
  return s;
}

/// Self-intersection of a section of O(k) on the weighted plane P(w1, w2, w3).
inline Rational wps_section_self_intersection(const std::array<int, 3>& w, int k) {
  if (w[0] < 1 || w[1] < 1 || w[2] < 1 || k < 1) throw std::invalid_argument("weights and degree must be positive");
  return Rational(k * k, w[0] * w[1] * w[2]);
}

/// Boundary divisors delta_ij of the five-pointed genus-0 moduli space, in the
/// order (0,1), (0,2), ..., (3,4). Pairing -1 on the diagonal, 1 for disjoint pairs.
inline std::vector<std::pair<int, int>> m05_boundary_labels() {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) out.emplace_back(i, j);
  return out;
}

inline Matrix<Rational> m05_boundary_matrix() {
  auto lab = m05_boundary_labels();
  Matrix<Rational> m(lab.size(), lab.size(), Rational(0));
  for (std::size_t x = 0; x < lab.size(); ++x) {
    for (std::size_t y = 0; y < lab.size(); ++y) {
      if (x == y) {
        m(x, y) = -1;
      } else {
        auto [a, b] = lab[x];
        auto [c, d] = lab[y];
        if (a != c && a != d && b != c && b != d) m(x, y) = 1;
      }
    }
  }
  return m;
}

/// Square of the total boundary.
inline Rational m05_boundary_square() {
  auto m = m05_boundary_matrix();
  Rational s = 0;
  for (std::size_t x = 0; x < m.rows(); ++x)
    for (std::size_t y = 0; y < m.cols(); ++y) s += m(x, y);
  return s;
}

/// Delta^2 recomputed through the degree-120 quotient: 4 (boundary)^2 / 120.
inline Rational m05_cross_check() { return 4 * m05_boundary_square() / 120; }

inline Rational degree_from(const Rational& pullback_square, const Rational& delta_sq) {
  if (delta_sq == 0) throw std::invalid_argument("discriminant self-intersection is zero");
  return pullback_square / delta_sq;
}

inline Rational degree_via_ledger() {
  const auto pc = plucker_counts(5);
  Ledger l = build_ledger(pc.flexes);
  auto abc = solve_pullback_multiplicities(l);
  return degree_from(self_intersection(pullback_class(l, abc), l), discriminant_square());
}

/// Bitangents count twice and flexes four times.
inline long long combinatorial_degree(long long bitangents, long long flexes) {
  if (bitangents < 0 || flexes < 0) throw std::invalid_argument("counts must be nonnegative");
  return 2 * bitangents + 4 * flexes;
}

struct DerivationRow {
  std::string quantity;
  std::string value;
  std::string anchor;
};

inline std::vector<DerivationRow> derivation_table() {
  const auto pc = plucker_counts(5);
  Ledger l = build_ledger(pc.flexes);
  auto abc = solve_pullback_multiplicities(l);
  auto pb = self_intersection(pullback_class(l, abc), l);
  std::vector<DerivationRow> t;
  t.push_back({"dual curve degree", std::to_string(pc.dual_degree), "d(d-1) for d = 5"});
  t.push_back({"cusps of the dual curve", std::to_string(pc.flexes), "flexes 3d(d-2)"});
  t.push_back({"bitangents", std::to_string(pc.bitangents), "d(d-2)(d-3)(d+3)/2"});
  t.push_back({"D~^2", l(0, 0).str(), "20^2 - 45 (4 + 1 + 1), blow-up bookkeeping"});
  t.push_back({"E1^2, E2^2, E3^2", l(l.e(0, 1), l.e(0, 1)).str() + ", " + l(l.e(0, 2), l.e(0, 2)).str() + ", " +
                                      l(l.e(0, 3), l.e(0, 3)).str(),
               "log resolution over each cusp"});
  t.push_back({"Delta^2", wps_section_self_intersection({1, 2, 3}, 2).str(), "section of O(2) on P(1,2,3)"});
  t.push_back({"Delta^2 (boundary route)", m05_cross_check().str(), "4 * 20 / 120"});
  t.push_back({"coefficient of D~", kStrictTransformCoefficient.str(), "assumed: unramified over general point of D"});
  t.push_back({"(a, b, c)", abc[0].str() + ", " + abc[1].str() + ", " + abc[2].str(), "projection formula against E1, E2, E3"});
  t.push_back({"(pullback Delta)^2", pb.str(), "ledger quadratic form"});
  t.push_back({"degree", degree_from(pb, discriminant_square()).str(), "(pullback Delta)^2 / Delta^2"});
  t.push_back({"degree (combinatorial)", std::to_string(combinatorial_degree(pc.bitangents, pc.flexes)),
               "2 * bitangents + 4 * flexes"});
  return t;
}

}  // namespace qlines
