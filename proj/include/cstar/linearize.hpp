#ifndef CSTAR_LINEARIZE_HPP
#define CSTAR_LINEARIZE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cstar/action.hpp"
#include "cstar/flow.hpp"
#include "cstar/poly.hpp"

namespace cstar {

/// Trapezoid rule on t ∈ [0,1] with `nodes` nodes including both endpoints.
/// Periodicity of the integrand collapses it to a (nodes−1)-point uniform sum,
/// which is exact once nodes−1 exceeds every integrand frequency.
struct QuadratureConfig {
  int nodes = 64;
};

/// The Bochner-average linearizer F with F(p) = 0 and DF(p) = Id. Symbolic
/// backend carries the polynomial map; the numeric backend carries a
/// quadrature-backed evaluation handle.
class Linearizer {
 public:
  static Linearizer symbolic(PolyMap F, CVector p, WeightData w);
  static Linearizer numeric(std::function<CVector(const CVector&)> eval, CVector p,
                            WeightData w, std::string label = "numeric");

  bool isSymbolic() const { return map_.has_value(); }
  const PolyMap& map() const;
  const CVector& fixedPoint() const { return p_; }
  const WeightData& weights() const { return w_; }
  const std::string& label() const { return label_; }

  CVector operator()(const CVector& x) const;
  /// Central finite-difference Jacobian (works for both backends).
  CMatrix jacobianFD(const CVector& x, double h = 1e-6) const;

 private:
  Linearizer() = default;
  std::optional<PolyMap> map_;
  std::function<CVector(const CVector&)> eval_;
  CVector p_;
  WeightData w_;
  std::string label_;
};

/// Closed-form Bochner averaging: in the diagonalizing frame, the coefficient
/// of x^α in coordinate i of F is the circle average of s^{−λ_i} c_{i,α}(s).
Linearizer bochner_symbolic(const ActionPoly& phi, const CVector& fixedPoint,
                            const WeightData& w);

/// Quadrature evaluation of ∫₀¹ Dφ^{−t}(p)·[φ^t(x) − p] dt at one point.
CVector bochner_numeric(const ActionSpec& spec, const CVector& x,
                        const QuadratureConfig& q = {},
                        const IntegratorConfig& cfg = {});

/// Node-doubling refinement: doubles starting from `start` until two
/// successive values agree to 1e-12, capped at 4096 nodes.
CVector bochner_numeric_auto(const ActionSpec& spec, const CVector& x,
                             int startNodes = 64, const IntegratorConfig& cfg = {},
                             int* usedNodes = nullptr);

struct ReconstructConfig {
  double gridRadius = 0.4;
  int quadratureStartNodes = 64;
  IntegratorConfig integrator;
  double conditionLimit = 1e10;
  double coefficientFloor = 1e-9;
  double* fitResidual = nullptr;   // RMS fit residual, reported when non-null
};

/// Least-squares recovery of F as a polynomial map up to total degree maxDeg
/// from bochner values on a tensor grid of scaled roots of unity.
PolyMap reconstruct_polymap(const ActionSpec& spec, int maxDeg,
                            const ReconstructConfig& cfg = {});

struct ConjugacySample {
  Complex z;
  CVector x;
};

struct ConjugacySampling {
  int count = 100;
  double xRadius = 0.5;
  double reZMax = 1.0;
  double imZMax = 0.2;
  uint64_t seed = 42;
};

struct ConjugacyReport {
  double maxResidual = 0.0;
  double meanResidual = 0.0;
  int sampleCount = 0;
  Complex worstZ;
  CVector worstX;
};

/// Certifies ψ^z ∘ F = F ∘ φ^z on explicit samples, with ψ the diagonal
/// weight action conjugated by the basis of F's weight data.
ConjugacyReport verify_conjugacy(const Linearizer& F, const ActionSpec& spec,
                                 const std::vector<ConjugacySample>& samples,
                                 const IntegratorConfig& cfg = {});

/// Convenience: generates samples from the config, then certifies.
ConjugacyReport verify_conjugacy(const Linearizer& F, const ActionSpec& spec,
                                 const ConjugacySampling& sampling = {},
                                 const IntegratorConfig& cfg = {});

/// ψ^z as a linear map: basis · diag(e^{2πi λ_j z}) · basis⁻¹.
CMatrix linear_action_matrix(const WeightData& w, Complex z);

}  // namespace cstar

#endif  // CSTAR_LINEARIZE_HPP
