#include "cstar/linearize.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "cstar/sampling.hpp"

namespace cstar {

namespace {

const Complex kTwoPiI(0.0, 2.0 * std::numbers::pi);
constexpr double kWeightResidualRefusal = 1e-6;
constexpr int kAutoNodeCap = 4096;
constexpr double kAutoAgreement = 1e-12;

Complex groupElement(Complex z) { return std::exp(kTwoPiI * z); }

/// Enumerate multi-indices with |α| <= maxDeg in grlex order.
std::vector<MultiIndex> monomialBasis(int n, int maxDeg) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n) {
      out.emplace_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[static_cast<size_t>(pos)] = e;
      rec(pos + 1, left - e);
      cur[static_cast<size_t>(pos)] = 0;
    }
  };
  rec(0, maxDeg);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Linearizer Linearizer::symbolic(PolyMap F, CVector p, WeightData w) {
  Linearizer l;
  l.map_ = std::move(F);
  l.p_ = std::move(p);
  l.w_ = std::move(w);
  l.label_ = "symbolic";
  return l;
}

Linearizer Linearizer::numeric(std::function<CVector(const CVector&)> eval, CVector p,
                               WeightData w, std::string label) {
  Linearizer l;
  l.eval_ = std::move(eval);
  l.p_ = std::move(p);
  l.w_ = std::move(w);
  l.label_ = std::move(label);
  return l;
}

const PolyMap& Linearizer::map() const {
  if (!map_) throw InputError("Linearizer: numeric backend has no polynomial map");
  return *map_;
}

CVector Linearizer::operator()(const CVector& x) const {
  return map_ ? (*map_)(x) : eval_(x);
}

CMatrix Linearizer::jacobianFD(const CVector& x, double h) const {
  const int n = static_cast<int>(x.size());
  CMatrix J(n, n);
  for (int j = 0; j < n; ++j) {
    CVector xp = x, xm = x;
    xp[j] += Complex(h);
    xm[j] -= Complex(h);
    J.col(j) = ((*this)(xp) - (*this)(xm)) / (2.0 * h);
  }
  return J;
}

Linearizer bochner_symbolic(const ActionPoly& phi, const CVector& fixedPoint,
                            const WeightData& w) {
  if (w.residual > kWeightResidualRefusal)
    throw InputError(
        "bochner_symbolic: weight data residual too large, weights unreliable");
  const int n = phi.dim();
  // work with the fixed point at the origin, in the diagonalizing frame
  ActionPoly centered = phi.translated(fixedPoint);
  ActionPoly framed = centered.conjugatedByLinear(w.basis, w.basisInverse);

  std::vector<Poly> coords;
  coords.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Poly fi(n);
    for (const auto& [alpha, c] : framed.coord(i).terms()) {
      const Complex avg = laurent_circle_average(c.shifted(-w.weights[i]));
      fi.addTerm(alpha, avg);
    }
    coords.push_back(std::move(fi));
  }
  PolyMap framedF(std::move(coords));
  PolyMap F = framedF.leftMultiplied(w.basis)
                  .composedWithLinear(w.basisInverse)
                  .translated(-fixedPoint);
  return Linearizer::symbolic(std::move(F), fixedPoint, w);
}

CVector bochner_numeric(const ActionSpec& spec, const CVector& x,
                        const QuadratureConfig& q, const IntegratorConfig& cfg) {
  if (q.nodes < 2) throw InputError("QuadratureConfig: node count must be >= 2");
  if (static_cast<int>(x.size()) != spec.dim())
    throw InputError("bochner_numeric: point dimension does not match action");
  const int n = spec.dim();
  const CVector& p = spec.fixedPoint;
  if ((x - p).cwiseAbs().maxCoeff() == 0.0)
    return CVector::Zero(n);  // F(p) = 0 holds exactly

  const int points = q.nodes - 1;  // closed trapezoid of a 1-periodic integrand
  CVector acc = CVector::Zero(n);
  if (spec.kind == ActionKind::ClosedForm) {
    const ActionPoly& phi = *spec.closed;
    const LaurentMatrix L = phi.translated(p).linearMatrix();
    for (int m = 0; m < points; ++m) {
      const double t = static_cast<double>(m) / points;
      const Complex s = groupElement(Complex(t));
      // Dφ^{-t}(p) = L(s)⁻¹ = L(1/s) by the group law
      acc += L.eval(1.0 / s) * (phi.eval(s, x) - p);
    }
  } else {
    const PolyMap& X = *spec.field;
    for (int m = 0; m < points; ++m) {
      const double t = static_cast<double>(m) / points;
      const CMatrix D = variational_matrix(X, Complex(-t), p);
      const CVector fx = integrate_flow(X, FlowQuery{Complex(t), x}, cfg);
      acc += D * (fx - p);
    }
  }
  return acc / static_cast<double>(points);
}

CVector bochner_numeric_auto(const ActionSpec& spec, const CVector& x, int startNodes,
                             const IntegratorConfig& cfg, int* usedNodes) {
  int nodes = std::max(2, startNodes);
  CVector prev = bochner_numeric(spec, x, QuadratureConfig{nodes}, cfg);
  while (nodes < kAutoNodeCap) {
    const int next = std::min(2 * nodes, kAutoNodeCap);
    CVector cur = bochner_numeric(spec, x, QuadratureConfig{next}, cfg);
    const double diff = (cur - prev).cwiseAbs().maxCoeff();
    prev = cur;
    nodes = next;
    if (diff <= kAutoAgreement) break;
  }
  if (usedNodes) *usedNodes = nodes;
  return prev;
}

PolyMap reconstruct_polymap(const ActionSpec& spec, int maxDeg,
                            const ReconstructConfig& cfg) {
  if (maxDeg < 1) throw InputError("reconstruct_polymap: maxDeg must be >= 1");
  if (spec.kind == ActionKind::VectorField) {
    PeriodicityReport per = periodicity_check(*spec.field, SamplingConfig{}, cfg.integrator);
    if (!per.pass)
      throw NotAPeriodicFlow(
          "reconstruct_polymap: generator fails the time-1 periodicity check");
  }
  const int n = spec.dim();
  const CVector& p = spec.fixedPoint;

  const int perAxis = maxDeg + 2;
  double pointCount = 1.0;
  for (int j = 0; j < n; ++j) pointCount *= perAxis;
  if (pointCount > 20000.0)
    throw InputError("reconstruct_polymap: tensor grid too large for this dimension");
  const int rows = static_cast<int>(pointCount);

  // tensor grid of scaled roots of unity, centered at the fixed point
  std::vector<CVector> grid;
  grid.reserve(static_cast<size_t>(rows));
  std::vector<int> digit(static_cast<size_t>(n), 0);
  for (int r = 0; r < rows; ++r) {
    CVector u(n);
    for (int j = 0; j < n; ++j) {
      const double th = 2.0 * std::numbers::pi * digit[static_cast<size_t>(j)] / perAxis;
      u[j] = cfg.gridRadius * Complex(std::cos(th), std::sin(th));
    }
    grid.push_back(u);
    for (int j = 0; j < n; ++j) {
      if (++digit[static_cast<size_t>(j)] < perAxis) break;
      digit[static_cast<size_t>(j)] = 0;
    }
  }

  const std::vector<MultiIndex> basis = monomialBasis(n, maxDeg);
  const int cols = static_cast<int>(basis.size());
  CMatrix V(rows, cols);
  CMatrix B(rows, n);
  for (int r = 0; r < rows; ++r) {
    const CVector& u = grid[static_cast<size_t>(r)];
    for (int c = 0; c < cols; ++c) {
      Complex m(1.0);
      for (int j = 0; j < n; ++j)
        for (int e = 0; e < basis[static_cast<size_t>(c)][j]; ++e) m *= u[j];
      V(r, c) = m;
    }
    B.row(r) = bochner_numeric_auto(spec, p + u, cfg.quadratureStartNodes, cfg.integrator)
                   .transpose();
  }

  // column scaling keeps the conditioning test about the grid, not the radius
  CVector colScale(cols);
  for (int c = 0; c < cols; ++c) colScale[c] = std::max(V.col(c).norm(), 1e-300);
  CMatrix Vs = V * colScale.cwiseInverse().asDiagonal();

  Eigen::JacobiSVD<CMatrix> svd(Vs, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (smin <= 0.0 || smax / smin > cfg.conditionLimit)
    throw DegreeTooHighForGrid(
        "reconstruct_polymap: grid cannot resolve the requested degree (condition " +
        std::to_string(smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity()) +
        ")");

  double rss = 0.0;
  std::vector<Poly> coords;
  coords.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const CVector ci = svd.solve(B.col(i)).cwiseQuotient(colScale);
    rss += (V * ci - B.col(i)).squaredNorm();
    Poly fi(n);
    for (int c = 0; c < cols; ++c)
      if (std::abs(ci[c]) >= cfg.coefficientFloor) fi.addTerm(basis[static_cast<size_t>(c)], ci[c]);
    coords.push_back(std::move(fi));
  }
  if (cfg.fitResidual) *cfg.fitResidual = std::sqrt(rss / (static_cast<double>(rows) * n));

  // fitted in centered coordinates u = x − p
  return PolyMap(std::move(coords)).translated(-p);
}

CMatrix linear_action_matrix(const WeightData& w, Complex z) {
  const int n = static_cast<int>(w.weights.size());
  CVector d(n);
  for (int j = 0; j < n; ++j)
    d[j] = std::exp(kTwoPiI * z * static_cast<double>(w.weights[j]));
  return w.basis * d.asDiagonal() * w.basisInverse;
}

ConjugacyReport verify_conjugacy(const Linearizer& F, const ActionSpec& spec,
                                 const std::vector<ConjugacySample>& samples,
                                 const IntegratorConfig& cfg) {
  ConjugacyReport rep;
  rep.sampleCount = static_cast<int>(samples.size());
  rep.worstX = CVector::Zero(spec.dim());
  double sum = 0.0;
  for (const auto& [z, x] : samples) {
    CVector phix;
    try {
      phix = spec.kind == ActionKind::ClosedForm
                 ? spec.closed->eval(groupElement(z), x)
                 : integrate_flow(*spec.field, FlowQuery{z, x}, cfg);
    } catch (const IntegrationFailure& e) {
      throw IntegrationFailure("verify_conjugacy: integration failed at sample z=(" +
                                   std::to_string(z.real()) + "," + std::to_string(z.imag()) +
                                   "): " + e.what(),
                               e.reached());
    }
    const CVector lhs = linear_action_matrix(F.weights(), z) * F(x);
    const CVector rhs = F(phix);
    const double r = (lhs - rhs).cwiseAbs().maxCoeff();
    sum += r;
    if (r >= rep.maxResidual) {
      rep.maxResidual = r;
      rep.worstZ = z;
      rep.worstX = x;
    }
  }
  if (!samples.empty()) rep.meanResidual = sum / static_cast<double>(samples.size());
  return rep;
}

ConjugacyReport verify_conjugacy(const Linearizer& F, const ActionSpec& spec,
                                 const ConjugacySampling& sampling,
                                 const IntegratorConfig& cfg) {
  Sampler sampler(sampling.seed);
  std::vector<ConjugacySample> samples;
  samples.reserve(static_cast<size_t>(sampling.count));
  for (int k = 0; k < sampling.count; ++k)
    samples.push_back({sampler.zInRect(sampling.reZMax, sampling.imZMax),
                       spec.fixedPoint + sampler.inPolydisc(spec.dim(), sampling.xRadius)});
  return verify_conjugacy(F, spec, samples, cfg);
}

}  // namespace cstar
