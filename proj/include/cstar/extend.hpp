#ifndef CSTAR_EXTEND_HPP
#define CSTAR_EXTEND_HPP

#include "cstar/action.hpp"
#include "cstar/linearize.hpp"

namespace cstar {

struct InjectivitySearchConfig {
  double maxRadius = 1.0;
  double minRadius = 1e-4;
  int boundarySamples = 200;
  int pairSamples = 1000;
  double minSingularValue = 1e-6;
  double inputSeparation = 1e-6;
  double outputSeparation = 1e-9;
  int bisectIterations = 6;
  uint64_t seed = 42;
};

/// Certified ball (in the diagonalizing frame, centered at p) on which F is
/// injective with nonsingular derivative: the hypothesis of the saturation
/// extension.
struct InjectivityDomain {
  double radius = 0.0;
  double minSingularObserved = 0.0;
  int boundarySamples = 0;
  int pairSamples = 0;
};

InjectivityDomain injectivity_radius(const Linearizer& F,
                                     const InjectivitySearchConfig& cfg = {});

struct SaturationConfig {
  int budget = 24;              // contraction doublings
  double baseContraction = 0.05;
  IntegratorConfig integrator;
};

struct SaturationResult {
  CVector value;     // T(y) = ψ^{−z} F(φ^z(y))
  Complex witnessZ;  // contraction that brought the orbit into the domain
  double residual;   // well-definedness cross-check at a deeper contraction
};

/// Extends F along the orbit of y: contract toward the (dicritical) fixed
/// point until the orbit enters the certified domain, evaluate F there, and
/// pull the result back with the inverse linear action.
SaturationResult saturate_extend(const ActionSpec& spec, const Linearizer& F,
                                 const InjectivityDomain& dom, const CVector& y,
                                 const SaturationConfig& cfg = {});

/// ‖ψ^{−z₁}F(φ^{z₁}(y)) − ψ^{−z₂}F(φ^{z₂}(y))‖ for two witnesses that both
/// land in the domain; small residuals realize the isotropy argument.
double welldefined_check(const ActionSpec& spec, const Linearizer& F,
                         const InjectivityDomain& dom, const CVector& y, Complex z1,
                         Complex z2, const IntegratorConfig& cfg = {});

/// φ^z(y) for either spec kind (closed-form evaluation or flow integration).
CVector apply_action(const ActionSpec& spec, Complex z, const CVector& y,
                     const IntegratorConfig& cfg = {});

/// Membership of x in the domain ball, measured in the diagonalizing frame.
bool domain_contains(const InjectivityDomain& dom, const Linearizer& F,
                     const CVector& x);

}  // namespace cstar

#endif  // CSTAR_EXTEND_HPP
