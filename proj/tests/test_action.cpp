#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cstar/action.hpp"
#include "cstar/flow.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cstar;

TEST_CASE("validate_action: E1 passes on 50 samples with 0.1 <= |s| <= 10") {
  SamplingConfig cfg;
  cfg.count = 50;
  // E1's group law is the zero polynomial (hand expansion), so residuals are
  // pure round-off
  const ValidationReport rep = validate_action(fixtures::e1(), cfg);
  CHECK(rep.pass);
  CHECK(rep.groupLawMax <= 1e-12);
  CHECK(rep.identityMax <= 1e-12);
  CHECK(rep.fixedPointMax <= 1e-12);
  CHECK(rep.identityCoeffMax == 0.0);
}

TEST_CASE("validate_action: linear diagonal action has round-off residuals") {
  const ValidationReport rep = validate_action(fixtures::diagonal_action({1, -1}));
  CHECK(rep.pass);
  CHECK(rep.groupLawMax <= 1e-13);
}

TEST_CASE("validate_action: broken group law fails") {
  // Φ(s,(x,y)) = (sx, s²y + x³): hand evaluation gives
  // Φ(2,Φ(2,(1,0))) = (4,12) vs Φ(4,(1,0)) = (4,1)
  LaurentCoeffPoly c0(2), c1(2);
  c0.addTerm(MultiIndex({1, 0}), LaurentPoly::monomial(1));
  c1.addTerm(MultiIndex({0, 1}), LaurentPoly::monomial(2));
  c1.addTerm(MultiIndex({3, 0}), LaurentPoly(Complex(1.0)));
  const ActionSpec bad =
      ActionSpec::closedForm(ActionPoly({c0, c1}), CVector::Zero(2));
  CVector one0(2);
  one0 << Complex(1.0), Complex(0.0);
  const CVector inner = bad.closed->eval(Complex(2.0), one0);
  const CVector lhs = bad.closed->eval(Complex(2.0), inner);
  const CVector rhs = bad.closed->eval(Complex(4.0), one0);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() >= 0.1);
  CHECK_FALSE(validate_action(bad).pass);

  // variant that does satisfy the identity at s = 1 yet breaks the group law
  const ValidationReport rep = validate_action(fixtures::broken_group_law());
  CHECK(rep.identityCoeffMax == 0.0);
  CHECK(rep.groupLawMax >= 0.01);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("validate_action: vector field path checks periodicity and X(p)=0") {
  CHECK(validate_action(fixtures::euler_cubic_field(), SamplingConfig{.count = 10, .radius = 0.5})
            .pass);
  const ValidationReport bad =
      validate_action(fixtures::nonperiodic_field(), SamplingConfig{.count = 5, .radius = 0.5});
  CHECK_FALSE(bad.pass);
  CHECK(bad.periodicityMax > 0.1);
}

TEST_CASE("linear_part: E1 gives [[s,0],[0,s^2]]") {
  const LinearPart lp = linear_part(fixtures::e1());
  REQUIRE(lp.kind == ActionKind::ClosedForm);
  const LaurentMatrix& M = *lp.closed;
  CHECK(M(0, 0).terms().size() == 1);
  CHECK(M(0, 0).coeff(1) == Complex(1.0));
  CHECK(M(1, 1).coeff(2) == Complex(1.0));
  CHECK(M(0, 1).isZero());
  CHECK(M(1, 0).isZero());

  // oracle: finite differences of the frozen-s map at the fixed point
  const PolyMap at2 = fixtures::e1().closed->at(Complex(2.0));
  const CMatrix J = oracles::fd_jacobian([&](const CVector& v) { return at2(v); },
                                         CVector::Zero(2));
  CHECK(std::abs(J(0, 0) - M(0, 0).eval(Complex(2.0))) < 1e-8);
  CHECK(std::abs(J(1, 1) - M(1, 1).eval(Complex(2.0))) < 1e-8);
}

TEST_CASE("linear_part: vector field gives DX(p) by exact differentiation") {
  const LinearPart lp = linear_part(fixtures::euler_cubic_field());
  REQUIRE(lp.kind == ActionKind::VectorField);
  const CMatrix& B = *lp.generator;
  CHECK(std::abs(B(0, 0) - fixtures::kTwoPiI) < 1e-15);
  CHECK(std::abs(B(1, 1) - 2.0 * fixtures::kTwoPiI) < 1e-15);
  CHECK(std::abs(B(0, 1)) == 0.0);
  CHECK(std::abs(B(1, 0)) == 0.0);
}

TEST_CASE("linear_part: identity action gives the identity matrix for all s") {
  const ActionSpec id = ActionSpec::closedForm(ActionPoly::identity(3), CVector::Zero(3));
  const LaurentMatrix M = linear_part(id).closed.value();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        CHECK(M(i, j).coeff(0) == Complex(1.0));
        CHECK(M(i, j).terms().size() == 1);
      } else {
        CHECK(M(i, j).isZero());
      }
    }
}

TEST_CASE("linear part of validated closed forms is the identity at s = 1") {
  for (const ActionSpec& spec :
       {fixtures::e1(), fixtures::freq5(), fixtures::hyperbolic(),
        fixtures::conjugated_linear_action(Eigen::Vector3i(1, 2, 3),
                                           fixtures::random_conjugation(3, 5))}) {
    const CMatrix M1 = linear_part(spec).closed->eval(Complex(1.0));
    CHECK((M1 - CMatrix::Identity(spec.dim(), spec.dim())).cwiseAbs().maxCoeff() <=
          1e-13);
  }
}

TEST_CASE("extract_weights: diagonal generator and E1") {
  // DX(0) = 2πi diag(1,2)
  const WeightData wv = extract_weights(linear_part(fixtures::euler_cubic_field()));
  CHECK(wv.weights[0] == 1);
  CHECK(wv.weights[1] == 2);
  CHECK(wv.residual <= 1e-12);

  const WeightData wc = extract_weights(linear_part(fixtures::e1()));
  CHECK(wc.weights[0] == 1);
  CHECK(wc.weights[1] == 2);
  CHECK((wc.basis - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("extract_weights: Jordan block raises NilpotentPartDetected") {
  CMatrix B(2, 2);
  B << fixtures::kTwoPiI, fixtures::kTwoPiI, Complex(0.0), fixtures::kTwoPiI;
  const LinearPart lp{ActionKind::VectorField, std::nullopt, B};
  CHECK_THROWS_AS(extract_weights(lp), NilpotentPartDetected);
}

TEST_CASE("extract_weights: non-integer ratio raises NotAPeriodicFlow") {
  CMatrix B(2, 2);
  B << fixtures::kTwoPiI * Complex(1.37), Complex(0.0), Complex(0.0),
      fixtures::kTwoPiI * Complex(2.0);
  const LinearPart lp{ActionKind::VectorField, std::nullopt, B};
  CHECK_THROWS_AS(extract_weights(lp), NotAPeriodicFlow);
}

TEST_CASE("weight extraction is conjugation-invariant (multiset)") {
  Eigen::Vector3i lam(1, 2, 3);
  for (uint64_t seed = 1; seed <= 12; ++seed) {
    const CMatrix G = fixtures::random_conjugation(3, seed);
    const ActionSpec spec = fixtures::conjugated_linear_action(lam, G);
    WeightData w = extract_weights(linear_part(spec));
    std::vector<int> got{w.weights[0], w.weights[1], w.weights[2]};
    std::sort(got.begin(), got.end());
    CHECK(got == std::vector<int>{1, 2, 3});
  }
}

TEST_CASE("classify_fixed_point: the three classes") {
  auto weightsOf = [](std::initializer_list<int> lam) {
    WeightData w;
    w.weights = IVector(static_cast<int>(lam.size()));
    int i = 0;
    for (int v : lam) w.weights[i++] = v;
    w.basis = CMatrix::Identity(w.weights.size(), w.weights.size());
    w.basisInverse = w.basis;
    return w;
  };
  CHECK(classify_fixed_point(weightsOf({1, 2})).tag == FixedPointTag::Dicritical);
  CHECK(classify_fixed_point(weightsOf({1, 2})).sign == SignConvention::Positive);
  CHECK(classify_fixed_point(weightsOf({-1, -3})).sign == SignConvention::Negative);
  CHECK(classify_fixed_point(weightsOf({1, -1})).tag == FixedPointTag::MixedSigns);
  CHECK(classify_fixed_point(weightsOf({1, 0})).tag == FixedPointTag::ZeroWeight);

  // invariance under permutation and global sign flip (up to the convention)
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> wdist(-4, 4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> lam(4);
    for (int& v : lam) v = wdist(rng);
    WeightData w = weightsOf({lam[0], lam[1], lam[2], lam[3]});
    const FixedPointClass base = classify_fixed_point(w);
    std::shuffle(lam.begin(), lam.end(), rng);
    WeightData wp = weightsOf({lam[0], lam[1], lam[2], lam[3]});
    CHECK(classify_fixed_point(wp).tag == base.tag);
    for (int& v : lam) v = -v;
    WeightData wn = weightsOf({lam[0], lam[1], lam[2], lam[3]});
    const FixedPointClass flipped = classify_fixed_point(wn);
    CHECK(flipped.tag == base.tag);
    if (base.tag == FixedPointTag::Dicritical) CHECK(flipped.sign != base.sign);
  }
}

TEST_CASE("extract_weights caps suspect weight magnitudes") {
  CMatrix B(1, 1);
  B << fixtures::kTwoPiI * Complex(2.0e6);
  const LinearPart lp{ActionKind::VectorField, std::nullopt, B};
  CHECK_THROWS_AS(extract_weights(lp), InputError);
}
