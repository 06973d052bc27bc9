#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace netcoh {

// Exact scalar used everywhere. mpq_class keeps the canonical form
// (positive denominator, coprime) through arithmetic.
using Rat = mpq_class;

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Parses "p", "p/q" (base 10, optional sign). Throws Error on malformed
// input or zero denominator.
inline Rat parse_rat(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    throw Error("bad rational literal: '" + text + "'");
  if (q.get_den() == 0) throw Error("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

// Serializes as "p/q", or "p" when the denominator is 1. Never a decimal.
inline std::string format_rat(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// Truncating quotient num/den as long; caller guarantees integrality & range.
inline long to_long(const Rat& q) {
  mpz_class z = q.get_num() / q.get_den();
  if (!z.fits_slong_p()) throw Error("rational out of long range");
  return z.get_si();
}

using MatQ = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using VecQ = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using RowQ = Eigen::Matrix<Rat, 1, Eigen::Dynamic>;

}  // namespace netcoh

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen
