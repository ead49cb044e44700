#pragma once

#include <gmpxx.h>

#include <string>

namespace arbor {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Always "p/q", including integers ("8/1"), so that output is uniform.
inline std::string fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace arbor
