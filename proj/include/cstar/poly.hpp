#ifndef CSTAR_POLY_HPP
#define CSTAR_POLY_HPP

#include <Eigen/Dense>
#include <complex>
#include <compare>
#include <map>
#include <vector>

#include "cstar/errors.hpp"

namespace cstar {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using IVector = Eigen::VectorXi;

/// Monomial exponent tuple (a_1,...,a_n), all entries >= 0.
/// Ordered graded-lexicographically so serialized coefficient lists are stable.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exps);
  static MultiIndex zero(int n);
  static MultiIndex unit(int n, int j);

  int size() const { return static_cast<int>(exps_.size()); }
  int degree() const;
  int operator[](int i) const { return exps_[static_cast<size_t>(i)]; }
  const std::vector<int>& exponents() const { return exps_; }

  MultiIndex operator+(const MultiIndex& other) const;
  bool operator==(const MultiIndex& other) const { return exps_ == other.exps_; }
  bool operator<(const MultiIndex& other) const;  // grlex

 private:
  std::vector<int> exps_;
};

/// Finite-support Laurent polynomial in the group parameter s:
/// c(s) = sum_k c_k s^k, k in Z. Canonical form stores no zero coefficients
/// (dropped only when exactly 0.0, never epsilon-pruned).
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(Complex constant);  // NOLINT: implicit embed of constants
  LaurentPoly(double constant) : LaurentPoly(Complex(constant, 0.0)) {}
  static LaurentPoly monomial(int k, Complex c = Complex(1.0, 0.0));

  const std::map<int, Complex>& terms() const { return terms_; }
  Complex coeff(int k) const;
  void addTerm(int k, Complex c);
  bool isZero() const { return terms_.empty(); }

  /// Exact evaluation; s = 0 with negative frequencies present is a DomainError.
  Complex eval(Complex s) const;
  LaurentPoly derivative() const;         // d/ds
  LaurentPoly shifted(int dk) const;      // multiplication by s^dk
  int minFreq() const;                    // 0 for the zero polynomial
  int maxFreq() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly operator-() const;
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(Complex c, const LaurentPoly& a);

 private:
  std::map<int, Complex> terms_;
};

/// The circle average (1/1)∫₀¹ c(e^{2πi t}) dt: every nonzero frequency
/// integrates to zero, so this is exactly the coefficient of s^0.
Complex laurent_circle_average(const LaurentPoly& c);

inline bool coeff_is_zero(const Complex& c) { return c == Complex(0.0, 0.0); }
inline bool coeff_is_zero(const LaurentPoly& c) { return c.isZero(); }

/// Sparse multivariate polynomial over a coefficient ring (Complex or
/// LaurentPoly). Terms are kept in canonical form: grlex-ordered, no zeros.
template <class Coeff>
class SparsePoly {
 public:
  explicit SparsePoly(int nvars) : n_(nvars) {}
  static SparsePoly constant(int nvars, const Coeff& c) {
    SparsePoly p(nvars);
    p.addTerm(MultiIndex::zero(nvars), c);
    return p;
  }
  static SparsePoly variable(int nvars, int j) {
    SparsePoly p(nvars);
    p.addTerm(MultiIndex::unit(nvars, j), Coeff(1.0));
    return p;
  }

  int nvars() const { return n_; }
  const std::map<MultiIndex, Coeff>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  int degree() const {
    int d = 0;
    for (const auto& [a, c] : terms_) d = std::max(d, a.degree());
    return d;
  }

  void addTerm(const MultiIndex& a, const Coeff& c) {
    if (coeff_is_zero(c)) return;
    auto it = terms_.find(a);
    if (it == terms_.end()) {
      terms_.emplace(a, c);
    } else {
      it->second += c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  Coeff coeff(const MultiIndex& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? Coeff(0.0) : it->second;
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    for (const auto& [a, c] : o.terms_) addTerm(a, c);
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& o) {
    for (const auto& [a, c] : o.terms_) addTerm(a, Coeff(-1.0) * c);
    return *this;
  }
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r(a.n_);
    for (const auto& [ai, ac] : a.terms_)
      for (const auto& [bi, bc] : b.terms_) r.addTerm(ai + bi, ac * bc);
    return r;
  }
  SparsePoly scaled(const Coeff& c) const {
    SparsePoly r(n_);
    for (const auto& [a, tc] : terms_) r.addTerm(a, c * tc);
    return r;
  }

  SparsePoly derivative(int j) const {
    SparsePoly r(n_);
    for (const auto& [a, c] : terms_) {
      int e = a[j];
      if (e == 0) continue;
      std::vector<int> exps = a.exponents();
      exps[static_cast<size_t>(j)] = e - 1;
      r.addTerm(MultiIndex(std::move(exps)), Coeff(static_cast<double>(e)) * c);
    }
    return r;
  }

 private:
  int n_ = 0;
  std::map<MultiIndex, Coeff> terms_;
};

using Poly = SparsePoly<Complex>;
using LaurentCoeffPoly = SparsePoly<LaurentPoly>;

/// Substitutes args[j] for variable j. All args must share f's variable count
/// of their own (the output's), which may differ from f's.
template <class Coeff>
SparsePoly<Coeff> compose(const SparsePoly<Coeff>& f,
                          const std::vector<SparsePoly<Coeff>>& args) {
  if (static_cast<int>(args.size()) != f.nvars())
    throw InputError("compose: argument count does not match variable count");
  const int m = args.empty() ? 0 : args[0].nvars();
  // per-variable power cache, powers[j][e] = args[j]^e
  std::vector<std::vector<SparsePoly<Coeff>>> powers(args.size());
  for (size_t j = 0; j < args.size(); ++j)
    powers[j].push_back(SparsePoly<Coeff>::constant(m, Coeff(1.0)));
  auto power = [&](size_t j, int e) -> const SparsePoly<Coeff>& {
    while (static_cast<int>(powers[j].size()) <= e)
      powers[j].push_back(powers[j].back() * args[j]);
    return powers[j][static_cast<size_t>(e)];
  };
  SparsePoly<Coeff> r(m);
  for (const auto& [a, c] : f.terms()) {
    SparsePoly<Coeff> term = SparsePoly<Coeff>::constant(m, c);
    for (int j = 0; j < f.nvars(); ++j)
      if (a[j] > 0) term = term * power(static_cast<size_t>(j), a[j]);
    r += term;
  }
  return r;
}

/// Polynomial map C^n -> C^n; houses vector fields, linearizers and
/// conjugating automorphisms.
class PolyMap {
 public:
  explicit PolyMap(std::vector<Poly> coords);
  static PolyMap identity(int n);
  static PolyMap zero(int n);
  static PolyMap linear(const CMatrix& A);

  int dim() const { return n_; }
  const Poly& coord(int i) const { return coords_[static_cast<size_t>(i)]; }
  Poly& coord(int i) { return coords_[static_cast<size_t>(i)]; }

  CVector operator()(const CVector& x) const;
  CMatrix jacobian(const CVector& x) const;  // exact differentiation
  CMatrix linearMatrix() const;              // degree-1 coefficients
  CVector constantTerm() const;
  int degree() const;

  PolyMap composedWithLinear(const CMatrix& A) const;  // x -> f(A x)
  PolyMap leftMultiplied(const CMatrix& A) const;      // x -> A f(x)
  PolyMap translated(const CVector& a) const;          // x -> f(x + a)
  PolyMap operator-(const PolyMap& o) const;
  PolyMap pruned(double eps) const;  // drop |coeff| < eps (fit cleanup only)

 private:
  int n_ = 0;
  std::vector<Poly> coords_;
};

/// poly_eval with the spec's error contract (dimension mismatch -> InputError).
CVector poly_eval(const PolyMap& f, const CVector& x);

PolyMap compose(const PolyMap& outer, const PolyMap& inner);

/// Square matrix with LaurentPoly entries; the s-dependent linear part
/// of a closed-form action lives here.
class LaurentMatrix {
 public:
  explicit LaurentMatrix(int n) : n_(n), entries_(static_cast<size_t>(n) * n) {}
  int dim() const { return n_; }
  LaurentPoly& operator()(int i, int j) { return entries_[idx(i, j)]; }
  const LaurentPoly& operator()(int i, int j) const { return entries_[idx(i, j)]; }

  CMatrix eval(Complex s) const;
  LaurentMatrix derivative() const;
  /// B * M * C with constant matrices B, C.
  LaurentMatrix conjugated(const CMatrix& B, const CMatrix& C) const;

 private:
  size_t idx(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }
  int n_;
  std::vector<LaurentPoly> entries_;
};

/// One-parameter family of polynomial maps Φ(s, x): each monomial coefficient
/// is a Laurent polynomial in the group parameter s.
class ActionPoly {
 public:
  explicit ActionPoly(std::vector<LaurentCoeffPoly> coords);
  static ActionPoly identity(int n);
  /// The model linear action diag(s^{λ_1}, ..., s^{λ_n}).
  static ActionPoly diagonal(const IVector& weights);
  /// s -> L(s) x for a Laurent matrix L.
  static ActionPoly linear(const LaurentMatrix& L);

  int dim() const { return n_; }
  const LaurentCoeffPoly& coord(int i) const { return coords_[static_cast<size_t>(i)]; }

  CVector eval(Complex s, const CVector& x) const;
  PolyMap at(Complex s) const;  // freeze the group parameter
  LaurentMatrix linearMatrix() const;
  ActionPoly translated(const CVector& a) const;  // Φ(s, x+a) − a
  /// Ainv Φ(s, A x): change of frame by a constant matrix.
  ActionPoly conjugatedByLinear(const CMatrix& A, const CMatrix& Ainv) const;
  int maxAbsFrequency() const;

 private:
  int n_ = 0;
  std::vector<LaurentCoeffPoly> coords_;
};

/// action_eval with the spec's error contract (s = 0 -> DomainError).
CVector action_eval(const ActionPoly& phi, Complex s, const CVector& x);

}  // namespace cstar

#endif  // CSTAR_POLY_HPP
