#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace gentropy {

// Arbitrary-precision rational, canonical form maintained by GMP.
using Rational = mpq_class;
using BigInt = mpz_class;

Rational rational_from_string(const std::string& s);  // "p/q" or "p"
std::string to_string(const Rational& q);             // "p/q", or "p" when q == 1

BigInt floor_rat(const Rational& q);
BigInt ceil_rat(const Rational& q);

// Directed conversions: to_double_down(q) <= q <= to_double_up(q).
double to_double(const Rational& q);
double to_double_down(const Rational& q);
double to_double_up(const Rational& q);

// Exact conversion (every finite double is rational).
Rational rational_from_double(double d);

// Closed interval [lo, hi] guaranteed to contain a true value.
// All arithmetic here is exact rational interval arithmetic, so no rounding
// slack is introduced by the operations themselves.
struct CertifiedValue {
  Rational lo;
  Rational hi;

  CertifiedValue() : lo(0), hi(0) {}
  CertifiedValue(Rational l, Rational h);
  static CertifiedValue point(const Rational& v) { return {v, v}; }
  static CertifiedValue from_doubles(double l, double h);

  bool is_point() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  double mid() const;
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }

  CertifiedValue operator+(const CertifiedValue& o) const;
  CertifiedValue operator-(const CertifiedValue& o) const;
  CertifiedValue operator*(const CertifiedValue& o) const;
  CertifiedValue operator/(const CertifiedValue& o) const;  // o must not contain 0
  CertifiedValue& operator+=(const CertifiedValue& o);

  CertifiedValue hull(const CertifiedValue& o) const;
  CertifiedValue clamp_nonneg() const;
};

CertifiedValue operator*(const Rational& a, const CertifiedValue& v);

}  // namespace gentropy
