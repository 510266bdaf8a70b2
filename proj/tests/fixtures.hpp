// Shared example actions. E1 is the workhorse: Φ(s,(x,y)) = (sx, s²y + (s²−s³)x³),
// a genuine action whose Bochner average is the shear (x, y + x³).
#ifndef CSTAR_TESTS_FIXTURES_HPP
#define CSTAR_TESTS_FIXTURES_HPP

#include <numbers>
#include <random>

#include "cstar/action.hpp"
#include "cstar/poly.hpp"

namespace fixtures {

using cstar::ActionPoly;
using cstar::ActionSpec;
using cstar::CMatrix;
using cstar::Complex;
using cstar::CVector;
using cstar::IVector;
using cstar::LaurentCoeffPoly;
using cstar::LaurentMatrix;
using cstar::LaurentPoly;
using cstar::MultiIndex;
using cstar::Poly;
using cstar::PolyMap;

inline const Complex kTwoPiI(0.0, 2.0 * std::numbers::pi);

inline LaurentPoly laurent(std::initializer_list<std::pair<int, Complex>> terms) {
  LaurentPoly p;
  for (const auto& [k, c] : terms) p.addTerm(k, c);
  return p;
}

/// Φ(s,(x,y)) = (s x, s² y + c(s) x^d) for a cocycle coefficient c.
inline ActionSpec weighted_shear_action(const LaurentPoly& c, int d, int yWeight = 2) {
  LaurentCoeffPoly c0(2);
  c0.addTerm(MultiIndex({1, 0}), LaurentPoly::monomial(1));
  LaurentCoeffPoly c1(2);
  c1.addTerm(MultiIndex({0, 1}), LaurentPoly::monomial(yWeight));
  c1.addTerm(MultiIndex({d, 0}), c);
  return ActionSpec::closedForm(ActionPoly({c0, c1}), CVector::Zero(2));
}

/// E1: (s x, s² y + (s² − s³) x³); averages to F = (x, y + x³).
inline ActionSpec e1() {
  return weighted_shear_action(laurent({{2, 1.0}, {3, -1.0}}), 3);
}

/// Sign-flipped variant: (s x, s² y + (s³ − s²) x³); averages to (x, y − x³).
inline ActionSpec e1_flipped() {
  return weighted_shear_action(laurent({{3, 1.0}, {2, -1.0}}), 3);
}

/// Frequency-5 cocycle: (s x, s² y + (s² − s⁵) x⁵).
inline ActionSpec freq5() {
  return weighted_shear_action(laurent({{2, 1.0}, {5, -1.0}}), 5);
}

/// Identity at s=1 holds but the group law fails: (s x, s² y + (1 − s) x³).
inline ActionSpec broken_group_law() {
  return weighted_shear_action(laurent({{0, 1.0}, {1, -1.0}}), 3);
}

inline ActionSpec diagonal_action(std::initializer_list<int> weights) {
  IVector w(static_cast<int>(weights.size()));
  int i = 0;
  for (int lam : weights) w[i++] = lam;
  return ActionSpec::closedForm(ActionPoly::diagonal(w),
                                CVector::Zero(static_cast<int>(weights.size())));
}

/// The nondicritical model (s x, s⁻¹ y).
inline ActionSpec hyperbolic() { return diagonal_action({1, -1}); }

/// Vector field X = 2πi·(x, 2y + x³); generates E1 with the flipped cocycle.
inline ActionSpec euler_cubic_field() {
  Poly c0(2);
  c0.addTerm(MultiIndex({1, 0}), kTwoPiI);
  Poly c1(2);
  c1.addTerm(MultiIndex({0, 1}), 2.0 * kTwoPiI);
  c1.addTerm(MultiIndex({3, 0}), kTwoPiI);
  return ActionSpec::vectorField(PolyMap({c0, c1}), CVector::Zero(2));
}

/// Linear field X = 2πi·(x, 2y).
inline ActionSpec linear_field() {
  Poly c0(2);
  c0.addTerm(MultiIndex({1, 0}), kTwoPiI);
  Poly c1(2);
  c1.addTerm(MultiIndex({0, 1}), 2.0 * kTwoPiI);
  return ActionSpec::vectorField(PolyMap({c0, c1}), CVector::Zero(2));
}

/// Missing 2πi factor: the time-1 flow is e·x, not the identity.
inline ActionSpec nonperiodic_field() {
  Poly c0(2);
  c0.addTerm(MultiIndex({1, 0}), Complex(1.0));
  Poly c1(2);
  c1.addTerm(MultiIndex({0, 1}), Complex(2.0));
  return ActionSpec::vectorField(PolyMap({c0, c1}), CVector::Zero(2));
}

/// Well-conditioned random invertible matrix: a Haar-ish unitary times a
/// modest diagonal stretch.
inline CMatrix random_conjugation(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<CMatrix> qr(M);
  CMatrix Q = qr.householderQ();
  CVector d(n);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int i = 0; i < n; ++i) d[i] = Complex(u(rng), 0.0);
  return Q * d.asDiagonal();
}

/// G · diag(s^{w_1},...,s^{w_n}) · G⁻¹ as a closed-form linear action.
inline ActionSpec conjugated_linear_action(const IVector& weights, const CMatrix& G) {
  const int n = static_cast<int>(weights.size());
  LaurentMatrix D(n);
  for (int i = 0; i < n; ++i) D(i, i) = LaurentPoly::monomial(weights[i]);
  return ActionSpec::closedForm(ActionPoly::linear(D.conjugated(G, G.inverse())),
                                CVector::Zero(n));
}

}  // namespace fixtures

#endif  // CSTAR_TESTS_FIXTURES_HPP
