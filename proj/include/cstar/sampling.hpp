#ifndef CSTAR_SAMPLING_HPP
#define CSTAR_SAMPLING_HPP

#include <cmath>
#include <numbers>
#include <random>

#include "cstar/poly.hpp"

namespace cstar {

/// Deterministic sample generator shared by validation, certification and the
/// CLI. A fixed seed reproduces every report bit-for-bit (numeric paths drift
/// only through the integrator).
class Sampler {
 public:
  explicit Sampler(uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng_);
  }

  Complex inDisc(double radius) {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    const double th = uniform(0.0, 2.0 * std::numbers::pi);
    return Complex(r * std::cos(th), r * std::sin(th));
  }

  Complex onCircle(double radius) {
    const double th = uniform(0.0, 2.0 * std::numbers::pi);
    return Complex(radius * std::cos(th), radius * std::sin(th));
  }

  CVector inPolydisc(int n, double radius) {
    CVector v(n);
    for (int i = 0; i < n; ++i) v[i] = inDisc(radius);
    return v;
  }

  /// Uniform on the euclidean sphere of the given radius in C^n.
  CVector onSphere(int n, double radius) {
    std::normal_distribution<double> g(0.0, 1.0);
    CVector v(n);
    double norm2 = 0.0;
    do {
      for (int i = 0; i < n; ++i) v[i] = Complex(g(rng_), g(rng_));
      norm2 = v.norm();
    } while (norm2 < 1e-12);
    return (radius / norm2) * v;
  }

  /// Group parameter with log-uniform modulus in [mMin, mMax], uniform angle.
  Complex groupParam(double mMin, double mMax) {
    const double m = std::exp(uniform(std::log(mMin), std::log(mMax)));
    const double th = uniform(0.0, 2.0 * std::numbers::pi);
    return Complex(m * std::cos(th), m * std::sin(th));
  }

  /// Additive parameter z in the rectangle |Re z| <= reMax, |Im z| <= imMax.
  Complex zInRect(double reMax, double imMax) {
    return Complex(uniform(-reMax, reMax), uniform(-imMax, imMax));
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace cstar

#endif  // CSTAR_SAMPLING_HPP
