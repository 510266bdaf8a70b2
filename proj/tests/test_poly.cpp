#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cstar/poly.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cstar;

TEST_CASE("poly_eval: identity and direct substitution") {
  const PolyMap id = PolyMap::identity(2);
  CVector x(2);
  x << Complex(0.3, 0.0), Complex(0.0, -0.7);
  CHECK((poly_eval(id, x) - x).cwiseAbs().maxCoeff() == 0.0);

  // f = (x, y + x^3)
  Poly f0 = Poly::variable(2, 0);
  Poly f1 = Poly::variable(2, 1);
  f1.addTerm(MultiIndex({3, 0}), Complex(1.0));
  const PolyMap f({f0, f1});
  CVector one(2);
  one << Complex(1.0), Complex(0.0);
  const CVector r = poly_eval(f, one);
  CHECK(r[0] == Complex(1.0));
  CHECK(r[1] == Complex(1.0));

  // g = (x, y - x^3) at (2, 1) -> (2, -7)
  Poly g1 = Poly::variable(2, 1);
  g1.addTerm(MultiIndex({3, 0}), Complex(-1.0));
  const PolyMap g({f0, g1});
  CVector p(2);
  p << Complex(2.0), Complex(1.0);
  const CVector rg = poly_eval(g, p);
  CHECK(rg[0] == Complex(2.0));
  CHECK(rg[1] == Complex(-7.0));
}

TEST_CASE("poly_eval: dimension mismatch is an input error") {
  const PolyMap id = PolyMap::identity(2);
  CHECK_THROWS_AS(poly_eval(id, CVector::Zero(3)), InputError);
}

TEST_CASE("laurent_circle_average matches trapezoid quadrature") {
  // c(s) = 1 - s -> 1
  const LaurentPoly c1 = fixtures::laurent({{0, 1.0}, {1, -1.0}});
  CHECK(std::abs(oracles::circle_average_quadrature(c1) - Complex(1.0)) < 1e-13);
  CHECK(laurent_circle_average(c1) == Complex(1.0));

  // c(s) = s^-2 + 5 + 3 s^7 -> 5
  const LaurentPoly c2 = fixtures::laurent({{-2, 1.0}, {0, 5.0}, {7, 3.0}});
  CHECK(std::abs(oracles::circle_average_quadrature(c2) - Complex(5.0)) < 1e-12);
  CHECK(laurent_circle_average(c2) == Complex(5.0));

  // c(s) = s -> 0
  CHECK(laurent_circle_average(LaurentPoly::monomial(1)) == Complex(0.0));
}

TEST_CASE("laurent: s^k * s^-k averages to 1 for |k| <= 16") {
  for (int k = -16; k <= 16; ++k) {
    const LaurentPoly prod = LaurentPoly::monomial(k) * LaurentPoly::monomial(-k);
    CHECK(laurent_circle_average(prod) == Complex(1.0));
  }
}

TEST_CASE("laurent: evaluation at s=0 with negative frequencies is a domain error") {
  const LaurentPoly c = fixtures::laurent({{-1, 1.0}});
  CHECK_THROWS_AS(c.eval(Complex(0.0)), DomainError);
  CHECK(fixtures::laurent({{2, 1.0}}).eval(Complex(0.0)) == Complex(0.0));
}

TEST_CASE("action_eval: group identity, E1 at s=2, diagonal weights") {
  const ActionSpec e1 = fixtures::e1();
  CVector x(2);
  x << Complex(0.4, 0.1), Complex(-0.2, 0.3);
  CHECK((action_eval(*e1.closed, Complex(1.0), x) - x).cwiseAbs().maxCoeff() == 0.0);

  CVector one0(2);
  one0 << Complex(1.0), Complex(0.0);
  const CVector r = action_eval(*e1.closed, Complex(2.0), one0);
  CHECK(std::abs(r[0] - Complex(2.0)) < 1e-15);
  CHECK(std::abs(r[1] - Complex(-4.0)) < 1e-15);  // 4 - 8

  const ActionSpec hyp = fixtures::hyperbolic();
  CVector ones(2);
  ones << Complex(1.0), Complex(1.0);
  const CVector h = action_eval(*hyp.closed, Complex(2.0), ones);
  CHECK(std::abs(h[0] - Complex(2.0)) < 1e-15);
  CHECK(std::abs(h[1] - Complex(0.5)) < 1e-15);
}

TEST_CASE("action_eval: s = 0 is excluded") {
  const ActionSpec e1 = fixtures::e1();
  CHECK_THROWS_AS(action_eval(*e1.closed, Complex(0.0), CVector::Zero(2)), DomainError);
}

namespace {

// Random polynomials with dyadic-rational coefficients (multiples of 1/16):
// their sums and differences are exact in double precision, so canonical-form
// closure can be asserted coefficient-exactly.
Poly randomDyadicPoly(std::mt19937_64& rng, int n, int maxDeg, int terms) {
  std::uniform_int_distribution<int> deg(0, maxDeg);
  std::uniform_int_distribution<int> num(-32, 32);
  Poly p(n);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(static_cast<size_t>(n), 0);
    int left = deg(rng);
    for (int j = 0; j < n && left > 0; ++j) {
      std::uniform_int_distribution<int> part(0, left);
      e[static_cast<size_t>(j)] = part(rng);
      left -= e[static_cast<size_t>(j)];
    }
    p.addTerm(MultiIndex(e), Complex(num(rng) / 16.0, num(rng) / 16.0));
  }
  return p;
}

}  // namespace

TEST_CASE("canonical form closure: (f + g) - g == f exactly") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly f = randomDyadicPoly(rng, 3, 4, 6);
    const Poly g = randomDyadicPoly(rng, 3, 4, 6);
    const Poly back = (f + g) - g;
    CHECK(back.terms().size() == f.terms().size());
    for (const auto& [a, c] : f.terms()) CHECK(back.coeff(a) == c);
  }
}

TEST_CASE("validated actions evaluate to the identity at s = 1") {
  for (const ActionSpec& spec :
       {fixtures::e1(), fixtures::e1_flipped(), fixtures::freq5(), fixtures::hyperbolic()}) {
    // coefficient-exact: freezing s = 1 must give the identity map
    const PolyMap at1 = spec.closed->at(Complex(1.0));
    const PolyMap diff = at1 - PolyMap::identity(2);
    for (int i = 0; i < 2; ++i) CHECK(diff.coord(i).isZero());

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 100; ++k) {
      CVector x(2);
      x << Complex(u(rng), u(rng)), Complex(u(rng), u(rng));
      CHECK((action_eval(*spec.closed, Complex(1.0), x) - x).cwiseAbs().maxCoeff() <=
            1e-14);
    }
  }
}

TEST_CASE("multi-index ordering is graded lexicographic") {
  const MultiIndex a({0, 2}), b({1, 0}), c({2, 0}), d({1, 1});
  CHECK(b < a);   // degree 1 before degree 2
  CHECK(a < d);   // same degree: lex on exponents
  CHECK(d < c);
  Poly p(2);
  p.addTerm(c, Complex(1.0));
  p.addTerm(b, Complex(1.0));
  p.addTerm(a, Complex(1.0));
  std::vector<MultiIndex> order;
  for (const auto& [alpha, coeff] : p.terms()) order.push_back(alpha);
  CHECK(order[0] == b);
  CHECK(order[1] == a);
  CHECK(order[2] == c);
}

TEST_CASE("polymap composition and translation agree with pointwise evaluation") {
  const ActionSpec e1 = fixtures::e1();
  const PolyMap f = e1.closed->at(Complex(2.0));
  const PolyMap g = e1.closed->at(Complex(0.5, 0.25));
  const PolyMap fg = compose(f, g);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int k = 0; k < 25; ++k) {
    CVector x(2);
    x << Complex(u(rng), u(rng)), Complex(u(rng), u(rng));
    CHECK((fg(x) - f(g(x))).cwiseAbs().maxCoeff() < 1e-12);
    CVector a(2);
    a << Complex(u(rng), u(rng)), Complex(u(rng), u(rng));
    CHECK((f.translated(a)(x) - f(x + a)).cwiseAbs().maxCoeff() < 1e-12);
  }
}
