#include "cstar/action.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "cstar/flow.hpp"
#include "cstar/sampling.hpp"

namespace cstar {

namespace {

constexpr double kSemisimpleCondLimit = 1e8;
constexpr double kWeightMagnitudeCap = 1e6;
const Complex kTwoPiI(0.0, 2.0 * std::numbers::pi);

double relResidual(const CVector& a, const CVector& b) {
  return (a - b).cwiseAbs().maxCoeff() / (1.0 + b.cwiseAbs().maxCoeff());
}

double conditionNumber(const CMatrix& M) {
  Eigen::JacobiSVD<CMatrix> svd(M);
  const double smin = svd.singularValues().minCoeff();
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return svd.singularValues().maxCoeff() / smin;
}

/// Orders eigenpairs so the eigenvector matrix is as close to diagonal as a
/// greedy row assignment allows, then rescales each column so its assigned
/// entry is exactly 1. Diagonal inputs come out in coordinate order with
/// basis = Id.
void orderEigenpairs(Eigen::VectorXcd& mu, CMatrix& V) {
  const int n = static_cast<int>(mu.size());
  std::vector<int> rowOf(static_cast<size_t>(n), -1);
  std::vector<bool> rowUsed(static_cast<size_t>(n), false), colUsed(static_cast<size_t>(n), false);
  for (int pick = 0; pick < n; ++pick) {
    int br = -1, bc = -1;
    double best = -1.0;
    for (int r = 0; r < n; ++r) {
      if (rowUsed[static_cast<size_t>(r)]) continue;
      for (int c = 0; c < n; ++c) {
        if (colUsed[static_cast<size_t>(c)]) continue;
        const double m = std::abs(V(r, c));
        if (m > best) {
          best = m;
          br = r;
          bc = c;
        }
      }
    }
    rowUsed[static_cast<size_t>(br)] = true;
    colUsed[static_cast<size_t>(bc)] = true;
    rowOf[static_cast<size_t>(bc)] = br;
  }
  Eigen::VectorXcd mu2(n);
  CMatrix V2(n, n);
  for (int c = 0; c < n; ++c) {
    const int r = rowOf[static_cast<size_t>(c)];
    const Complex pivot = V(r, c);
    mu2[r] = mu[c];
    V2.col(r) = V.col(c) / pivot;
  }
  mu = mu2;
  V = V2;
}

/// Max coefficient distance of an s-dependent matrix from diag(s^{λ_j}).
double diagonalizationResidual(const LaurentMatrix& D, const IVector& weights) {
  const int n = D.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      LaurentPoly expected =
          (i == j) ? LaurentPoly::monomial(weights[i]) : LaurentPoly();
      LaurentPoly diff = D(i, j) - expected;
      for (const auto& [k, c] : diff.terms()) worst = std::max(worst, std::abs(c));
    }
  }
  return worst;
}

}  // namespace

ActionSpec ActionSpec::closedForm(ActionPoly phi, CVector p) {
  if (phi.dim() != static_cast<int>(p.size()))
    throw InputError("ActionSpec: fixed point dimension does not match action");
  return ActionSpec{ActionKind::ClosedForm, std::move(phi), std::nullopt, std::move(p)};
}

ActionSpec ActionSpec::vectorField(PolyMap X, CVector p) {
  if (X.dim() != static_cast<int>(p.size()))
    throw InputError("ActionSpec: fixed point dimension does not match field");
  return ActionSpec{ActionKind::VectorField, std::nullopt, std::move(X), std::move(p)};
}

ValidationReport validate_action(const ActionSpec& spec, const SamplingConfig& cfg) {
  if (cfg.count < 1) throw InputError("validate_action: sample count must be >= 1");
  if (cfg.sMin <= 0.0)
    throw DomainError("validate_action: group samples must avoid s = 0");
  ValidationReport rep;
  rep.kind = spec.kind;
  rep.sampleCount = cfg.count;
  rep.tolerance = cfg.tolerance;
  Sampler sampler(cfg.seed);
  const int n = spec.dim();

  if (spec.kind == ActionKind::ClosedForm) {
    const ActionPoly& phi = *spec.closed;
    // coefficient-level identity at s = 1 (holds exactly for genuine actions)
    PolyMap at1 = phi.at(Complex(1.0));
    PolyMap idm = PolyMap::identity(n);
    PolyMap diff = at1 - idm;
    for (int i = 0; i < n; ++i)
      for (const auto& [a, c] : diff.coord(i).terms())
        rep.identityCoeffMax = std::max(rep.identityCoeffMax, std::abs(c));

    for (int k = 0; k < cfg.count; ++k) {
      const Complex s = sampler.groupParam(cfg.sMin, cfg.sMax);
      const Complex s2 = sampler.groupParam(cfg.sMin, cfg.sMax);
      const CVector x = sampler.inPolydisc(n, cfg.radius);
      const CVector lhs = phi.eval(s, phi.eval(s2, x));
      const CVector rhs = phi.eval(s * s2, x);
      rep.groupLawMax = std::max(rep.groupLawMax, relResidual(lhs, rhs));
      rep.identityMax =
          std::max(rep.identityMax, relResidual(phi.eval(Complex(1.0), x), x));
      rep.fixedPointMax = std::max(
          rep.fixedPointMax, relResidual(phi.eval(s, spec.fixedPoint), spec.fixedPoint));
    }
    rep.pass = rep.groupLawMax <= cfg.tolerance && rep.identityMax <= cfg.tolerance &&
               rep.fixedPointMax <= cfg.tolerance && rep.identityCoeffMax <= cfg.tolerance;
  } else {
    const PolyMap& X = *spec.field;
    rep.generatorAtFixedPoint = X(spec.fixedPoint).cwiseAbs().maxCoeff();
    PeriodicityReport per = periodicity_check(X, cfg, IntegratorConfig{}, cfg.tolerance);
    rep.periodicityMax = per.maxResidual;
    rep.pass = rep.generatorAtFixedPoint <= cfg.tolerance && per.pass;
  }
  return rep;
}

int LinearPart::dim() const {
  return kind == ActionKind::ClosedForm ? closed->dim()
                                        : static_cast<int>(generator->rows());
}

LinearPart linear_part(const ActionSpec& spec) {
  if (spec.kind == ActionKind::ClosedForm) {
    // translate the fixed point to the origin, then read degree-1 coefficients
    ActionPoly centered = spec.closed->translated(spec.fixedPoint);
    return LinearPart{ActionKind::ClosedForm, centered.linearMatrix(), std::nullopt};
  }
  return LinearPart{ActionKind::VectorField, std::nullopt,
                    spec.field->jacobian(spec.fixedPoint)};
}

WeightData extract_weights(const LinearPart& lp, double tol) {
  const int n = lp.dim();
  // Generator with eigenvalues equal to the weights themselves:
  // d/ds at s=1 of the s-dependent matrix, or DX(p)/(2πi).
  CMatrix B;
  if (lp.kind == ActionKind::ClosedForm) {
    B = lp.closed->derivative().eval(Complex(1.0));
  } else {
    B = *lp.generator / kTwoPiI;
  }

  Eigen::ComplexEigenSolver<CMatrix> es(B);
  if (es.info() != Eigen::Success)
    throw NotAPeriodicFlow("extract_weights: eigen-decomposition failed");
  Eigen::VectorXcd mu = es.eigenvalues();
  CMatrix V = es.eigenvectors();

  if (conditionNumber(V) > kSemisimpleCondLimit)
    throw NilpotentPartDetected(
        "extract_weights: defective linear part (eigenvector matrix numerically "
        "singular); a C*-action has a semisimple linear part");

  orderEigenpairs(mu, V);

  WeightData w;
  w.weights = IVector(n);
  double residual = 0.0;
  for (int j = 0; j < n; ++j) {
    const double rounded = std::round(mu[j].real());
    residual = std::max(residual, std::abs(mu[j] - Complex(rounded)));
    if (std::abs(rounded) > kWeightMagnitudeCap)
      throw InputError("extract_weights: |weight| exceeds 1e6, suspect input");
    w.weights[j] = static_cast<int>(rounded);
  }
  w.basis = V;
  w.basisInverse = V.inverse();

  if (lp.kind == ActionKind::ClosedForm) {
    // confirm the exponents symbolically: A⁻¹ M(s) A must be diag(s^{λ_j})
    LaurentMatrix D = lp.closed->conjugated(w.basisInverse, w.basis);
    residual = std::max(residual, diagonalizationResidual(D, w.weights));
  }
  w.residual = residual;

  if (residual > tol)
    throw NotAPeriodicFlow(
        "extract_weights: eigenvalue ratios are not integers within tolerance "
        "(residual " +
        std::to_string(residual) + ")");
  return w;
}

FixedPointClass classify_fixed_point(const WeightData& w) {
  const int n = static_cast<int>(w.weights.size());
  bool anyZero = false, anyPos = false, anyNeg = false;
  for (int j = 0; j < n; ++j) {
    if (w.weights[j] == 0) anyZero = true;
    if (w.weights[j] > 0) anyPos = true;
    if (w.weights[j] < 0) anyNeg = true;
  }
  if (anyZero) return {FixedPointTag::ZeroWeight};
  if (anyPos && anyNeg) return {FixedPointTag::MixedSigns};
  return {FixedPointTag::Dicritical,
          anyPos ? SignConvention::Positive : SignConvention::Negative};
}

std::string to_string(FixedPointTag tag) {
  switch (tag) {
    case FixedPointTag::Dicritical: return "Dicritical";
    case FixedPointTag::ZeroWeight: return "ZeroWeight";
    case FixedPointTag::MixedSigns: return "MixedSigns";
  }
  return "?";
}

std::string to_string(SignConvention sign) {
  return sign == SignConvention::Positive ? "Positive" : "Negative";
}

}  // namespace cstar
