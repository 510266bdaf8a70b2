#include "cstar/flow.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "cstar/sampling.hpp"

namespace cstar {

namespace {

namespace ode = boost::numeric::odeint;
using State = std::vector<Complex>;

constexpr double kEscapeNorm = 1e8;
constexpr double kMinStep = 1e-15;

struct SegmentField {
  const PolyMap& X;
  Complex z;  // segment endpoint; d x / d t = z · X(x), t ∈ [0,1]

  void operator()(const State& x, State& dxdt, double /*t*/) const {
    CVector v(static_cast<int>(x.size()));
    for (size_t i = 0; i < x.size(); ++i) v[static_cast<int>(i)] = x[i];
    CVector r = X(v);
    dxdt.resize(x.size());
    for (size_t i = 0; i < x.size(); ++i) dxdt[i] = z * r[static_cast<int>(i)];
  }
};

double maxAbs(const State& x) {
  double m = 0.0;
  for (const Complex& c : x) m = std::max(m, std::abs(c));
  return m;
}

void checkConfig(const IntegratorConfig& cfg) {
  if (!(cfg.relTol > 0.0 && cfg.relTol <= 1e-2) ||
      !(cfg.absTol > 0.0 && cfg.absTol <= 1e-2))
    throw InputError("IntegratorConfig: tolerances must lie in (0, 1e-2]");
  if (cfg.maxSteps < 1) throw InputError("IntegratorConfig: maxSteps must be >= 1");
}

}  // namespace

CVector integrate_flow(const PolyMap& X, const FlowQuery& q, const IntegratorConfig& cfg) {
  checkConfig(cfg);
  if (X.dim() != static_cast<int>(q.x0.size()))
    throw InputError("integrate_flow: state dimension does not match field");
  if (q.z == Complex(0.0)) return q.x0;

  State x(q.x0.data(), q.x0.data() + q.x0.size());
  SegmentField field{X, q.z};
  auto stepper =
      ode::make_controlled(cfg.absTol, cfg.relTol, ode::runge_kutta_dopri5<State>());

  double t = 0.0;
  double dt = std::clamp(cfg.initialStep > 0.0 ? cfg.initialStep : 1e-2, kMinStep, 1.0);
  int steps = 0;
  while (t < 1.0) {
    if (++steps > cfg.maxSteps)
      throw IntegrationFailure("integrate_flow: step budget exhausted", t * q.z);
    dt = std::min(dt, 1.0 - t);
    const auto result = stepper.try_step(field, x, t, dt);
    if (result == ode::fail) {
      if (dt < kMinStep)
        throw IntegrationFailure("integrate_flow: step size underflow", t * q.z);
      continue;  // try_step already shrank dt
    }
    if (maxAbs(x) > kEscapeNorm)
      throw IntegrationFailure("integrate_flow: state escaped (norm > 1e8)", t * q.z);
  }

  CVector out(X.dim());
  for (int i = 0; i < X.dim(); ++i) out[i] = x[static_cast<size_t>(i)];
  return out;
}

CMatrix variational_matrix(const PolyMap& X, Complex z, const CVector& p) {
  const int n = X.dim();
  const CMatrix B = X.jacobian(p);
  Eigen::ComplexEigenSolver<CMatrix> es(B);
  if (es.info() == Eigen::Success) {
    const CMatrix V = es.eigenvectors();
    Eigen::JacobiSVD<CMatrix> svd(V);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin > 0.0 && smax / smin <= 1e8) {
      CVector d(n);
      for (int j = 0; j < n; ++j) d[j] = std::exp(z * es.eigenvalues()[j]);
      return V * d.asDiagonal() * V.inverse();
    }
  }
  // defective generator: scaling-and-squaring fallback
  CMatrix zB = z * B;
  return zB.exp();
}

PeriodicityReport periodicity_check(const PolyMap& X, const SamplingConfig& samples,
                                    const IntegratorConfig& cfg, double tolerance) {
  PeriodicityReport rep;
  rep.sampleCount = samples.count;
  rep.tolerance = tolerance;
  rep.worstPoint = CVector::Zero(X.dim());
  Sampler sampler(samples.seed);
  for (int k = 0; k < samples.count; ++k) {
    const CVector x = sampler.inPolydisc(X.dim(), samples.radius);
    const CVector y = integrate_flow(X, FlowQuery{Complex(1.0), x}, cfg);
    const double r = (y - x).cwiseAbs().maxCoeff();
    if (r >= rep.maxResidual) {
      rep.maxResidual = r;
      rep.worstPoint = x;
    }
  }
  rep.pass = rep.maxResidual <= tolerance;
  return rep;
}

}  // namespace cstar
