#pragma once

#include <stdexcept>
#include <string>

namespace fuzzcyl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument's domain was violated (x0 outside I,
/// function support outside its ideal, inadmissible hbar, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A map declared monotone was observed to violate ordering.
class MonotonicityError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input: interval literals, expressions, descriptors.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Elements from different cylinder algebras were combined.
class GeneratorMismatch : public Error {
 public:
  using Error::Error;
};

/// Fourier coefficients beyond the declared cutoff were not negligible.
class AliasingError : public Error {
 public:
  using Error::Error;
};

/// Scalar root bracketing failed while solving the commutator equation.
class BracketingError : public Error {
 public:
  using Error::Error;
};

}  // namespace fuzzcyl
