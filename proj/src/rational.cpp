#include "obslab/rational.hpp"

#include "obslab/error.hpp"

namespace obslab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotArtinian: return "NotArtinian";
    case ErrorKind::NotLocalNormalized: return "NotLocalNormalized";
    case ErrorKind::NotAnnihilated: return "NotAnnihilated";
    case ErrorKind::NotWellDefined: return "NotWellDefined";
    case ErrorKind::TruncationExceeded: return "TruncationExceeded";
    case ErrorKind::FeasibilityExceeded: return "FeasibilityExceeded";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::SequenceMismatch: return "SequenceMismatch";
    case ErrorKind::BadBidegree: return "BadBidegree";
    case ErrorKind::DivisionFailure: return "DivisionFailure";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Rat::Rat(long num, long den) {
  if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rat Rat::parse(const std::string& text) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw Error(ErrorKind::ParseError, "bad rational literal '" + text + "'");
  }
  q.canonicalize();
  return Rat(q);
}

Rat Rat::inverse() const {
  if (is_zero()) throw Error(ErrorKind::InvalidInput, "inverse of zero");
  return Rat(mpq_class(1 / q_));
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw Error(ErrorKind::InvalidInput, "division by zero");
  q_ /= o.q_;
  return *this;
}

Rat pow(const Rat& base, unsigned exponent) {
  Rat r = 1;
  for (unsigned i = 0; i < exponent; ++i) r *= base;
  return r;
}

Rat factorial(unsigned n) {
  Rat r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= Rat(static_cast<long>(i));
  return r;
}

}  // namespace obslab
