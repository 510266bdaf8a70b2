#ifndef CSTAR_ERRORS_HPP
#define CSTAR_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace cstar {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatches, bad configs, schema violations.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Evaluation outside the group domain (s = 0 is not in C*).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Eigenvalue ratios of the generator are not integers within tolerance.
class NotAPeriodicFlow : public Error {
 public:
  using Error::Error;
};

/// The linear part is defective; a genuine C*-action is always semisimple.
class NilpotentPartDetected : public Error {
 public:
  using Error::Error;
};

/// Adaptive integration ran out of steps, underflowed, or escaped.
class IntegrationFailure : public Error {
 public:
  IntegrationFailure(const std::string& what, std::complex<double> reached)
      : Error(what), reached_(reached) {}
  /// Complex time reached along the segment before the failure.
  std::complex<double> reached() const { return reached_; }

 private:
  std::complex<double> reached_;
};

/// Polynomial fit is ill-conditioned for the requested degree and grid.
class DegreeTooHighForGrid : public Error {
 public:
  using Error::Error;
};

/// No injectivity radius >= the configured minimum could be certified.
class DegenerateLinearizer : public Error {
 public:
  using Error::Error;
};

/// Saturation extension requested at a fixed point that is not dicritical.
class NotDicritical : public Error {
 public:
  using Error::Error;
};

/// Contraction budget exhausted without the orbit entering the domain.
class OrbitNeverEntersDomain : public Error {
 public:
  using Error::Error;
};

}  // namespace cstar

#endif  // CSTAR_ERRORS_HPP
