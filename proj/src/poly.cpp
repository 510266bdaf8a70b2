#include "cstar/poly.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace cstar {

// ---------------------------------------------------------------- MultiIndex

MultiIndex::MultiIndex(std::vector<int> exps) : exps_(std::move(exps)) {
  for (int e : exps_)
    if (e < 0) throw InputError("MultiIndex: negative exponent");
}

MultiIndex MultiIndex::zero(int n) { return MultiIndex(std::vector<int>(static_cast<size_t>(n), 0)); }

MultiIndex MultiIndex::unit(int n, int j) {
  std::vector<int> e(static_cast<size_t>(n), 0);
  e.at(static_cast<size_t>(j)) = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::degree() const {
  int d = 0;
  for (int e : exps_) d += e;
  return d;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (exps_.size() != other.exps_.size())
    throw InputError("MultiIndex: size mismatch in addition");
  std::vector<int> e(exps_.size());
  for (size_t i = 0; i < exps_.size(); ++i) e[i] = exps_[i] + other.exps_[i];
  return MultiIndex(std::move(e));
}

bool MultiIndex::operator<(const MultiIndex& other) const {
  const int da = degree(), db = other.degree();
  if (da != db) return da < db;
  return exps_ < other.exps_;  // lexicographic within a degree class
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(Complex constant) {
  if (!coeff_is_zero(constant)) terms_.emplace(0, constant);
}

LaurentPoly LaurentPoly::monomial(int k, Complex c) {
  LaurentPoly p;
  if (!coeff_is_zero(c)) p.terms_.emplace(k, c);
  return p;
}

Complex LaurentPoly::coeff(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void LaurentPoly::addTerm(int k, Complex c) {
  if (coeff_is_zero(c)) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
  } else {
    it->second += c;
    if (coeff_is_zero(it->second)) terms_.erase(it);
  }
}

Complex LaurentPoly::eval(Complex s) const {
  if (s == Complex(0.0) && minFreq() < 0)
    throw DomainError("LaurentPoly: evaluation at s = 0 with negative frequencies");
  Complex r(0.0);
  for (const auto& [k, c] : terms_) r += c * std::pow(s, k);
  return r;
}

LaurentPoly LaurentPoly::derivative() const {
  LaurentPoly r;
  for (const auto& [k, c] : terms_)
    if (k != 0) r.addTerm(k - 1, static_cast<double>(k) * c);
  return r;
}

LaurentPoly LaurentPoly::shifted(int dk) const {
  LaurentPoly r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k + dk, c);
  return r;
}

int LaurentPoly::minFreq() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int LaurentPoly::maxFreq() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [k, c] : o.terms_) addTerm(k, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [k, c] : o.terms_) addTerm(k, -c);
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) r.addTerm(ka + kb, ca * cb);
  return r;
}

LaurentPoly operator*(Complex c, const LaurentPoly& a) {
  LaurentPoly r;
  for (const auto& [k, ac] : a.terms_) r.addTerm(k, c * ac);
  return r;
}

Complex laurent_circle_average(const LaurentPoly& c) { return c.coeff(0); }

// ---------------------------------------------------------------- PolyMap

namespace {

/// Direct monomial evaluation with per-variable power caching.
template <class Coeff>
Coeff eval_sparse(const SparsePoly<Coeff>& f, const CVector& x);

template <>
Complex eval_sparse(const SparsePoly<Complex>& f, const CVector& x) {
  const int n = f.nvars();
  std::vector<std::vector<Complex>> pw(static_cast<size_t>(n), {Complex(1.0)});
  auto power = [&](int j, int e) {
    auto& col = pw[static_cast<size_t>(j)];
    while (static_cast<int>(col.size()) <= e) col.push_back(col.back() * x[j]);
    return col[static_cast<size_t>(e)];
  };
  Complex r(0.0);
  for (const auto& [a, c] : f.terms()) {
    Complex m = c;
    for (int j = 0; j < n; ++j)
      if (a[j] > 0) m *= power(j, a[j]);
    r += m;
  }
  return r;
}

}  // namespace

PolyMap::PolyMap(std::vector<Poly> coords) : coords_(std::move(coords)) {
  n_ = static_cast<int>(coords_.size());
  for (const auto& p : coords_)
    if (p.nvars() != n_)
      throw InputError("PolyMap: coordinate polynomial variable count mismatch");
}

PolyMap PolyMap::identity(int n) {
  std::vector<Poly> c;
  c.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) c.push_back(Poly::variable(n, i));
  return PolyMap(std::move(c));
}

PolyMap PolyMap::zero(int n) {
  return PolyMap(std::vector<Poly>(static_cast<size_t>(n), Poly(n)));
}

PolyMap PolyMap::linear(const CMatrix& A) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n) throw InputError("PolyMap::linear: matrix must be square");
  std::vector<Poly> c;
  c.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Poly p(n);
    for (int j = 0; j < n; ++j) p.addTerm(MultiIndex::unit(n, j), A(i, j));
    c.push_back(std::move(p));
  }
  return PolyMap(std::move(c));
}

CVector PolyMap::operator()(const CVector& x) const {
  if (static_cast<int>(x.size()) != n_)
    throw InputError("poly_eval: input dimension does not match map dimension");
  CVector r(n_);
  for (int i = 0; i < n_; ++i) r[i] = eval_sparse(coords_[static_cast<size_t>(i)], x);
  return r;
}

CMatrix PolyMap::jacobian(const CVector& x) const {
  if (static_cast<int>(x.size()) != n_)
    throw InputError("jacobian: input dimension does not match map dimension");
  CMatrix J(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      J(i, j) = eval_sparse(coords_[static_cast<size_t>(i)].derivative(j), x);
  return J;
}

CMatrix PolyMap::linearMatrix() const {
  CMatrix M = CMatrix::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      M(i, j) = coords_[static_cast<size_t>(i)].coeff(MultiIndex::unit(n_, j));
  return M;
}

CVector PolyMap::constantTerm() const {
  CVector v(n_);
  for (int i = 0; i < n_; ++i)
    v[i] = coords_[static_cast<size_t>(i)].coeff(MultiIndex::zero(n_));
  return v;
}

int PolyMap::degree() const {
  int d = 0;
  for (const auto& p : coords_) d = std::max(d, p.degree());
  return d;
}

PolyMap PolyMap::composedWithLinear(const CMatrix& A) const {
  std::vector<Poly> args;
  args.reserve(static_cast<size_t>(n_));
  for (int j = 0; j < n_; ++j) {
    Poly lin(n_);
    for (int k = 0; k < n_; ++k) lin.addTerm(MultiIndex::unit(n_, k), A(j, k));
    args.push_back(std::move(lin));
  }
  std::vector<Poly> c;
  c.reserve(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) c.push_back(compose(coords_[static_cast<size_t>(i)], args));
  return PolyMap(std::move(c));
}

PolyMap PolyMap::leftMultiplied(const CMatrix& A) const {
  std::vector<Poly> c;
  c.reserve(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    Poly p(n_);
    for (int k = 0; k < n_; ++k) p += coords_[static_cast<size_t>(k)].scaled(A(i, k));
    c.push_back(std::move(p));
  }
  return PolyMap(std::move(c));
}

PolyMap PolyMap::translated(const CVector& a) const {
  if (static_cast<int>(a.size()) != n_)
    throw InputError("translated: shift dimension mismatch");
  std::vector<Poly> args;
  args.reserve(static_cast<size_t>(n_));
  for (int j = 0; j < n_; ++j) {
    Poly lin = Poly::variable(n_, j);
    lin.addTerm(MultiIndex::zero(n_), a[j]);
    args.push_back(std::move(lin));
  }
  std::vector<Poly> c;
  c.reserve(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) c.push_back(compose(coords_[static_cast<size_t>(i)], args));
  return PolyMap(std::move(c));
}

PolyMap PolyMap::operator-(const PolyMap& o) const {
  if (o.n_ != n_) throw InputError("PolyMap subtraction: dimension mismatch");
  std::vector<Poly> c;
  c.reserve(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i)
    c.push_back(coords_[static_cast<size_t>(i)] - o.coords_[static_cast<size_t>(i)]);
  return PolyMap(std::move(c));
}

PolyMap PolyMap::pruned(double eps) const {
  std::vector<Poly> c;
  c.reserve(static_cast<size_t>(n_));
  for (const auto& p : coords_) {
    Poly q(n_);
    for (const auto& [a, co] : p.terms())
      if (std::abs(co) >= eps) q.addTerm(a, co);
    c.push_back(std::move(q));
  }
  return PolyMap(std::move(c));
}

CVector poly_eval(const PolyMap& f, const CVector& x) { return f(x); }

PolyMap compose(const PolyMap& outer, const PolyMap& inner) {
  if (outer.dim() != inner.dim()) throw InputError("compose: dimension mismatch");
  std::vector<Poly> args;
  args.reserve(static_cast<size_t>(inner.dim()));
  for (int j = 0; j < inner.dim(); ++j) args.push_back(inner.coord(j));
  std::vector<Poly> c;
  c.reserve(static_cast<size_t>(outer.dim()));
  for (int i = 0; i < outer.dim(); ++i) c.push_back(compose(outer.coord(i), args));
  return PolyMap(std::move(c));
}

// ---------------------------------------------------------------- LaurentMatrix

CMatrix LaurentMatrix::eval(Complex s) const {
  CMatrix M(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) M(i, j) = (*this)(i, j).eval(s);
  return M;
}

LaurentMatrix LaurentMatrix::derivative() const {
  LaurentMatrix D(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) D(i, j) = (*this)(i, j).derivative();
  return D;
}

LaurentMatrix LaurentMatrix::conjugated(const CMatrix& B, const CMatrix& C) const {
  LaurentMatrix R(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      LaurentPoly acc;
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) acc += (B(i, k) * C(l, j)) * (*this)(k, l);
      R(i, j) = acc;
    }
  return R;
}

// ---------------------------------------------------------------- ActionPoly

ActionPoly::ActionPoly(std::vector<LaurentCoeffPoly> coords) : coords_(std::move(coords)) {
  n_ = static_cast<int>(coords_.size());
  for (const auto& p : coords_)
    if (p.nvars() != n_)
      throw InputError("ActionPoly: coordinate polynomial variable count mismatch");
}

ActionPoly ActionPoly::identity(int n) {
  std::vector<LaurentCoeffPoly> c;
  c.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) c.push_back(LaurentCoeffPoly::variable(n, i));
  return ActionPoly(std::move(c));
}

ActionPoly ActionPoly::diagonal(const IVector& weights) {
  const int n = static_cast<int>(weights.size());
  std::vector<LaurentCoeffPoly> c;
  c.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    LaurentCoeffPoly p(n);
    p.addTerm(MultiIndex::unit(n, i), LaurentPoly::monomial(weights[i]));
    c.push_back(std::move(p));
  }
  return ActionPoly(std::move(c));
}

ActionPoly ActionPoly::linear(const LaurentMatrix& L) {
  const int n = L.dim();
  std::vector<LaurentCoeffPoly> c;
  c.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    LaurentCoeffPoly p(n);
    for (int j = 0; j < n; ++j) p.addTerm(MultiIndex::unit(n, j), L(i, j));
    c.push_back(std::move(p));
  }
  return ActionPoly(std::move(c));
}

CVector ActionPoly::eval(Complex s, const CVector& x) const {
  return at(s)(x);
}

PolyMap ActionPoly::at(Complex s) const {
  if (s == Complex(0.0))
    throw DomainError("action_eval: s = 0 is outside the group C*");
  std::vector<Poly> c;
  c.reserve(static_cast<size_t>(n_));
  for (const auto& lp : coords_) {
    Poly p(n_);
    for (const auto& [a, lc] : lp.terms()) p.addTerm(a, lc.eval(s));
    c.push_back(std::move(p));
  }
  return PolyMap(std::move(c));
}

LaurentMatrix ActionPoly::linearMatrix() const {
  LaurentMatrix M(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      M(i, j) = coords_[static_cast<size_t>(i)].coeff(MultiIndex::unit(n_, j));
  return M;
}

ActionPoly ActionPoly::translated(const CVector& a) const {
  if (static_cast<int>(a.size()) != n_)
    throw InputError("translated: shift dimension mismatch");
  std::vector<LaurentCoeffPoly> args;
  args.reserve(static_cast<size_t>(n_));
  for (int j = 0; j < n_; ++j) {
    LaurentCoeffPoly lin = LaurentCoeffPoly::variable(n_, j);
    lin.addTerm(MultiIndex::zero(n_), LaurentPoly(a[j]));
    args.push_back(std::move(lin));
  }
  std::vector<LaurentCoeffPoly> c;
  c.reserve(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    LaurentCoeffPoly p = compose(coords_[static_cast<size_t>(i)], args);
    p.addTerm(MultiIndex::zero(n_), LaurentPoly(-a[i]));
    c.push_back(std::move(p));
  }
  return ActionPoly(std::move(c));
}

ActionPoly ActionPoly::conjugatedByLinear(const CMatrix& A, const CMatrix& Ainv) const {
  if (static_cast<int>(A.rows()) != n_ || static_cast<int>(Ainv.rows()) != n_)
    throw InputError("conjugatedByLinear: matrix dimension mismatch");
  std::vector<LaurentCoeffPoly> args;
  args.reserve(static_cast<size_t>(n_));
  for (int j = 0; j < n_; ++j) {
    LaurentCoeffPoly lin(n_);
    for (int k = 0; k < n_; ++k)
      lin.addTerm(MultiIndex::unit(n_, k), LaurentPoly(A(j, k)));
    args.push_back(std::move(lin));
  }
  std::vector<LaurentCoeffPoly> substituted;
  substituted.reserve(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i)
    substituted.push_back(compose(coords_[static_cast<size_t>(i)], args));
  std::vector<LaurentCoeffPoly> c;
  c.reserve(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    LaurentCoeffPoly p(n_);
    for (int k = 0; k < n_; ++k)
      p += substituted[static_cast<size_t>(k)].scaled(LaurentPoly(Ainv(i, k)));
    c.push_back(std::move(p));
  }
  return ActionPoly(std::move(c));
}

int ActionPoly::maxAbsFrequency() const {
  int m = 0;
  for (const auto& p : coords_)
    for (const auto& [a, lc] : p.terms())
      m = std::max({m, std::abs(lc.minFreq()), std::abs(lc.maxFreq())});
  return m;
}

CVector action_eval(const ActionPoly& phi, Complex s, const CVector& x) {
  if (static_cast<int>(x.size()) != phi.dim())
    throw InputError("action_eval: input dimension does not match action dimension");
  return phi.eval(s, x);
}

}  // namespace cstar
