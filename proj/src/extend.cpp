#include "cstar/extend.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "cstar/sampling.hpp"

namespace cstar {

namespace {

const Complex kTwoPiI(0.0, 2.0 * std::numbers::pi);

double minSingularValue(const CMatrix& M) {
  Eigen::JacobiSVD<CMatrix> svd(M);
  return svd.singularValues().minCoeff();
}

struct RadiusEvidence {
  bool accepted = false;
  double minSingular = 0.0;
};

RadiusEvidence testRadius(const Linearizer& F, double r,
                          const InjectivitySearchConfig& cfg) {
  const int n = static_cast<int>(F.fixedPoint().size());
  const CMatrix& A = F.weights().basis;
  Sampler sampler(cfg.seed);
  RadiusEvidence ev;

  // derivative nonsingularity at the center and on the boundary sphere
  ev.minSingular = minSingularValue(F.jacobianFD(F.fixedPoint()));
  if (ev.minSingular < cfg.minSingularValue) return ev;
  for (int k = 0; k < cfg.boundarySamples; ++k) {
    const CVector x = F.fixedPoint() + A * sampler.onSphere(n, r);
    ev.minSingular = std::min(ev.minSingular, minSingularValue(F.jacobianFD(x)));
    if (ev.minSingular < cfg.minSingularValue) return ev;
  }

  // no collisions between separated interior points
  for (int k = 0; k < cfg.pairSamples; ++k) {
    const CVector u = sampler.onSphere(n, r * sampler.uniform(0.0, 1.0));
    const CVector v = sampler.onSphere(n, r * sampler.uniform(0.0, 1.0));
    if ((u - v).cwiseAbs().maxCoeff() < cfg.inputSeparation) continue;
    const CVector fu = F(F.fixedPoint() + A * u);
    const CVector fv = F(F.fixedPoint() + A * v);
    if ((fu - fv).cwiseAbs().maxCoeff() < cfg.outputSeparation) return ev;
  }
  ev.accepted = true;
  return ev;
}

}  // namespace

InjectivityDomain injectivity_radius(const Linearizer& F,
                                     const InjectivitySearchConfig& cfg) {
  double hi = cfg.maxRadius;
  RadiusEvidence ev = testRadius(F, hi, cfg);
  if (ev.accepted)
    return {hi, ev.minSingular, cfg.boundarySamples, cfg.pairSamples};

  // shrink to find an accepted radius, then bisect up toward the rejected one
  double lo = hi / 2.0;
  RadiusEvidence evLo = testRadius(F, lo, cfg);
  while (!evLo.accepted) {
    hi = lo;
    lo /= 2.0;
    if (lo < cfg.minRadius)
      throw DegenerateLinearizer(
          "injectivity_radius: no radius >= " + std::to_string(cfg.minRadius) +
          " could be certified (singular derivative or collisions)");
    evLo = testRadius(F, lo, cfg);
  }
  for (int it = 0; it < cfg.bisectIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    RadiusEvidence evMid = testRadius(F, mid, cfg);
    if (evMid.accepted) {
      lo = mid;
      evLo = evMid;
    } else {
      hi = mid;
    }
  }
  return {lo, evLo.minSingular, cfg.boundarySamples, cfg.pairSamples};
}

CVector apply_action(const ActionSpec& spec, Complex z, const CVector& y,
                     const IntegratorConfig& cfg) {
  if (spec.kind == ActionKind::ClosedForm)
    return spec.closed->eval(std::exp(kTwoPiI * z), y);
  return integrate_flow(*spec.field, FlowQuery{z, y}, cfg);
}

bool domain_contains(const InjectivityDomain& dom, const Linearizer& F,
                     const CVector& x) {
  return (F.weights().basisInverse * (x - F.fixedPoint())).norm() < dom.radius;
}

SaturationResult saturate_extend(const ActionSpec& spec, const Linearizer& F,
                                 const InjectivityDomain& dom, const CVector& y,
                                 const SaturationConfig& cfg) {
  const FixedPointClass cls = classify_fixed_point(F.weights());
  if (cls.tag != FixedPointTag::Dicritical)
    throw NotDicritical(
        "saturate_extend: saturation extension requires a dicritical fixed point "
        "(got " +
        to_string(cls.tag) + ")");

  // contraction direction: coordinate j scales by e^{2π λ_j b}, so b < 0
  // contracts positive weights; the sign flips for negative ones
  const double dir = cls.sign == SignConvention::Positive ? 1.0 : -1.0;
  auto contraction = [&](int k) {
    const double b = -std::ldexp(cfg.baseContraction, k);
    return Complex(0.0, -dir * b);  // z = −b·i in the paper's convention
  };
  auto pullback = [&](Complex z, const CVector& u) {
    return linear_action_matrix(F.weights(), -z) * F(u);
  };

  if (domain_contains(dom, F, y)) {
    const CVector value = F(y);
    const Complex zChk = contraction(0);
    const double residual =
        (value - pullback(zChk, apply_action(spec, zChk, y, cfg.integrator)))
            .cwiseAbs()
            .maxCoeff();
    return {value, Complex(0.0), residual};
  }

  for (int k = 0; k < cfg.budget; ++k) {
    const Complex z = contraction(k);
    const CVector u = apply_action(spec, z, y, cfg.integrator);
    if (!domain_contains(dom, F, u)) continue;
    const CVector value = pullback(z, u);
    const Complex z2 = contraction(k + 1);
    const CVector u2 = apply_action(spec, z2, y, cfg.integrator);
    const double residual = (value - pullback(z2, u2)).cwiseAbs().maxCoeff();
    return {value, z, residual};
  }
  throw OrbitNeverEntersDomain(
      "saturate_extend: contraction budget exhausted before the orbit entered the "
      "certified domain");
}

double welldefined_check(const ActionSpec& spec, const Linearizer& F,
                         const InjectivityDomain& dom, const CVector& y, Complex z1,
                         Complex z2, const IntegratorConfig& cfg) {
  const CVector u1 = apply_action(spec, z1, y, cfg);
  const CVector u2 = apply_action(spec, z2, y, cfg);
  if (!domain_contains(dom, F, u1) || !domain_contains(dom, F, u2))
    throw InputError("welldefined_check: both witnesses must land inside the domain");
  const CVector t1 = linear_action_matrix(F.weights(), -z1) * F(u1);
  const CVector t2 = linear_action_matrix(F.weights(), -z2) * F(u2);
  return (t1 - t2).cwiseAbs().maxCoeff();
}

}  // namespace cstar
