#ifndef CSTAR_FLOW_HPP
#define CSTAR_FLOW_HPP

#include "cstar/action.hpp"
#include "cstar/poly.hpp"

namespace cstar {

struct IntegratorConfig {
  double relTol = 1e-10;
  double absTol = 1e-12;
  int maxSteps = 1000000;
  double initialStep = 1e-2;
};

/// Query for the flow at complex time z (group element s = e^{2πi z}).
struct FlowQuery {
  Complex z;
  CVector x0;
};

/// Solution of ẋ = X(x) at complex time z, integrated along the straight
/// segment 0 -> z with an adaptive embedded Runge-Kutta scheme.
CVector integrate_flow(const PolyMap& X, const FlowQuery& q,
                       const IntegratorConfig& cfg = {});

/// Dφ^z(p) = exp(z · DX(p)); diagonalization when the generator is
/// semisimple, scaling-and-squaring otherwise.
CMatrix variational_matrix(const PolyMap& X, Complex z, const CVector& p);

struct PeriodicityReport {
  double maxResidual = 0.0;
  int sampleCount = 0;
  double tolerance = 0.0;
  bool pass = false;
  CVector worstPoint;
};

/// Checks ‖flow₁(x) − x‖ over sampled points; a generator failing this does
/// not generate a C*-action.
PeriodicityReport periodicity_check(const PolyMap& X, const SamplingConfig& samples = {},
                                    const IntegratorConfig& cfg = {},
                                    double tolerance = 1e-8);

}  // namespace cstar

#endif  // CSTAR_FLOW_HPP
