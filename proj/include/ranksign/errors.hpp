#pragma once

#include <stdexcept>
#include <string>

namespace ranksign {

/// Root of the library's typed error hierarchy. Every failure the library can
/// signal derives from this type, so callers (and the fuzz harness) can catch
/// one base class and still discriminate precisely.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- field / parameter errors ----------------------------------------------

/// Requested base field is outside the supported set (q = 2^a for
/// a in {1,2,4,6,8,16,40}, or an odd prime p < 256).
class UnsupportedField : public Error {
 public:
  using Error::Error;
};

/// Multiplicative inverse of zero requested.
class ZeroInverse : public Error {
 public:
  using Error::Error;
};

/// Scalar-inverse image of a subspace requested for the zero scalar.
class ZeroScalar : public Error {
 public:
  using Error::Error;
};

/// Parameter block violates a structural invariant (k > n, r' > (n-k)/d, ...).
class BadParams : public Error {
 public:
  using Error::Error;
};

// ---- linear algebra ---------------------------------------------------------

/// Matrix inversion attempted on a singular (or non-square) matrix.
class Singular : public Error {
 public:
  using Error::Error;
};

// ---- combinatorics / experiments -------------------------------------------

/// A theorem hypothesis required by the requested computation does not hold
/// (e.g. r(2d-1) > m for the T-decodable bounds, alpha(t+beta) > m for the
/// product-space tail bound).
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration refused: the instance exceeds the toy-scale guard.
class TooLarge : public Error {
 public:
  using Error::Error;
};

/// A rejection-sampling loop exceeded its retry cap.
class ResourceExhausted : public Error {
 public:
  using Error::Error;
};

// ---- wire formats -----------------------------------------------------------

/// Base class for serialization failures.
class WireError : public Error {
 public:
  using Error::Error;
};

class BadMagic : public WireError {
 public:
  using WireError::WireError;
};

class BadVersion : public WireError {
 public:
  using WireError::WireError;
};

/// Envelope kind byte does not match the decoder that was invoked.
class WrongKind : public WireError {
 public:
  using WireError::WireError;
};

class Truncated : public WireError {
 public:
  using WireError::WireError;
};

class TrailingBytes : public WireError {
 public:
  using WireError::WireError;
};

/// Payload length or digit layout disagrees with the caller-supplied
/// parameter block.
class RankFieldMismatch : public WireError {
 public:
  using WireError::WireError;
};

/// Body bytes are structurally invalid (out-of-range digit, inconsistent
/// parameter block, non-invertible stored matrix, ...).
class MalformedBody : public WireError {
 public:
  using WireError::WireError;
};

/// Signature-specific shape/encoding violation.
class MalformedSignature : public MalformedBody {
 public:
  using MalformedBody::MalformedBody;
};

}  // namespace ranksign
