#ifndef CSTAR_ACTION_HPP
#define CSTAR_ACTION_HPP

#include <optional>
#include <string>

#include "cstar/poly.hpp"

namespace cstar {

enum class ActionKind { ClosedForm, VectorField };

/// A C*-action on C^n given either in closed form Φ(s, x) or through the
/// generating vector field X of the flow z -> Φ(e^{2πi z}, x), together with
/// the declared fixed point p.
struct ActionSpec {
  ActionKind kind;
  std::optional<ActionPoly> closed;  // set iff kind == ClosedForm
  std::optional<PolyMap> field;      // set iff kind == VectorField
  CVector fixedPoint;

  static ActionSpec closedForm(ActionPoly phi, CVector p);
  static ActionSpec vectorField(PolyMap X, CVector p);
  int dim() const { return static_cast<int>(fixedPoint.size()); }
};

struct SamplingConfig {
  int count = 50;
  double radius = 1.0;   // polydisc radius for the x samples
  double sMin = 0.1;     // modulus range for the group samples
  double sMax = 10.0;
  uint64_t seed = 42;
  double tolerance = 1e-9;
};

/// Residuals are measured relative to 1 + the magnitude of the compared
/// values, so large |s| samples do not drown the certificate in round-off.
struct ValidationReport {
  ActionKind kind;
  double groupLawMax = 0.0;       // ‖Φ(s,Φ(s',x)) − Φ(ss',x)‖
  double identityMax = 0.0;       // ‖Φ(1,x) − x‖
  double identityCoeffMax = 0.0;  // coefficient distance of Φ(1,·) from Id
  double fixedPointMax = 0.0;     // ‖Φ(s,p) − p‖
  double periodicityMax = 0.0;    // ‖flow₁(x) − x‖ (vector fields)
  double generatorAtFixedPoint = 0.0;  // ‖X(p)‖ (vector fields)
  int sampleCount = 0;
  double tolerance = 0.0;
  bool pass = false;
};

ValidationReport validate_action(const ActionSpec& spec, const SamplingConfig& cfg = {});

/// Linear part of the action at the fixed point: an s-dependent matrix for
/// closed forms, the constant generator Jacobian DX(p) for vector fields.
struct LinearPart {
  ActionKind kind;
  std::optional<LaurentMatrix> closed;
  std::optional<CMatrix> generator;
  int dim() const;
};

LinearPart linear_part(const ActionSpec& spec);

/// Integer weight vector λ with the change of basis A such that
/// A⁻¹ (Dφ)_p(s) A = diag(s^{λ_j}); residual measures how far the
/// eigen-data is from that exact picture.
struct WeightData {
  IVector weights;
  CMatrix basis;
  CMatrix basisInverse;
  double residual = 0.0;
};

WeightData extract_weights(const LinearPart& lp, double tol = 1e-6);

enum class FixedPointTag { Dicritical, ZeroWeight, MixedSigns };
enum class SignConvention { Positive, Negative };

struct FixedPointClass {
  FixedPointTag tag;
  SignConvention sign = SignConvention::Positive;  // meaningful for Dicritical
};

FixedPointClass classify_fixed_point(const WeightData& w);

std::string to_string(FixedPointTag tag);
std::string to_string(SignConvention sign);

}  // namespace cstar

#endif  // CSTAR_ACTION_HPP
