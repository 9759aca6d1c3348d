#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace njl {

// Exact scalar field.  mpq_class arithmetic assumes canonical operands
// (gcd(num,den) = 1, den > 0) but its numerator/denominator constructor does
// not canonicalize, so this wrapper enforces the invariant on construction.
struct Rational : mpq_class {
  Rational() : mpq_class() {}

  template <std::integral T>
  Rational(T n) : mpq_class(static_cast<long>(n)) {}

  // exact binary expansion of the double
  explicit Rational(double d) : mpq_class(d) {}

  template <class T, class U>
  Rational(const __gmp_expr<T, U>& e) : mpq_class(e) {}

  template <class N, class D>
  Rational(const N& num, const D& den) : mpq_class(mpz_class(num), mpz_class(den)) {
    if (get_den() == 0) throw std::invalid_argument("zero denominator");
    canonicalize();
  }
};

inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational rat_pow(const Rational& q, unsigned k) {
  Rational r = 1, base = q;
  while (k) {
    if (k & 1u) r *= base;
    base *= base;
    k >>= 1u;
  }
  return r;
}

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline std::size_t den_bits(const Rational& q) {
  return mpz_sizeinbase(q.get_den().get_mpz_t(), 2);
}

using RatVec = std::vector<Rational>;
using RatMat = std::vector<std::vector<Rational>>;

}  // namespace njl
