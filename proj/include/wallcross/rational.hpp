#pragma once

#include <gmpxx.h>

#include <string>

namespace wc {

// mpq_class keeps num/den reduced with a positive denominator after every operation.
using Rational = mpq_class;

Rational parseRational(const std::string& s);
std::string toString(const Rational& q);

inline Rational rat(long n, long d = 1) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational factorial(int n);
Rational binomial(int n, int k);

}  // namespace wc
