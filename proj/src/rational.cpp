#include "gentropy/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gentropy {

Rational rational_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

BigInt floor_rat(const Rational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

BigInt ceil_rat(const Rational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

double to_double(const Rational& q) { return mpq_get_d(q.get_mpq_t()); }

Rational rational_from_double(double d) {
  if (!std::isfinite(d)) throw std::invalid_argument("non-finite double");
  Rational q;
  mpq_set_d(q.get_mpq_t(), d);
  q.canonicalize();
  return q;
}

double to_double_down(const Rational& q) {
  double d = to_double(q);
  if (!std::isfinite(d)) return -std::numeric_limits<double>::max();
  while (rational_from_double(d) > q) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
  return d;
}

double to_double_up(const Rational& q) {
  double d = to_double(q);
  if (!std::isfinite(d)) return std::numeric_limits<double>::max();
  while (rational_from_double(d) < q) d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

CertifiedValue::CertifiedValue(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) throw std::invalid_argument("CertifiedValue: lo > hi");
}

CertifiedValue CertifiedValue::from_doubles(double l, double h) {
  return {rational_from_double(l), rational_from_double(h)};
}

double CertifiedValue::mid() const { return to_double((lo + hi) / 2); }

CertifiedValue CertifiedValue::operator+(const CertifiedValue& o) const {
  return {lo + o.lo, hi + o.hi};
}

CertifiedValue CertifiedValue::operator-(const CertifiedValue& o) const {
  return {lo - o.hi, hi - o.lo};
}

CertifiedValue CertifiedValue::operator*(const CertifiedValue& o) const {
  Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
  return {std::min(std::min(a, b), std::min(c, d)), std::max(std::max(a, b), std::max(c, d))};
}

CertifiedValue CertifiedValue::operator/(const CertifiedValue& o) const {
  if (o.lo <= 0 && o.hi >= 0) throw std::domain_error("division by interval containing 0");
  CertifiedValue inv{Rational(1) / o.hi, Rational(1) / o.lo};
  return *this * inv;
}

CertifiedValue& CertifiedValue::operator+=(const CertifiedValue& o) {
  lo += o.lo;
  hi += o.hi;
  return *this;
}

CertifiedValue CertifiedValue::hull(const CertifiedValue& o) const {
  return {std::min(lo, o.lo), std::max(hi, o.hi)};
}

CertifiedValue CertifiedValue::clamp_nonneg() const {
  return {std::max(lo, Rational(0)), std::max(hi, Rational(0))};
}

CertifiedValue operator*(const Rational& a, const CertifiedValue& v) {
  if (a >= 0) return {a * v.lo, a * v.hi};
  return {a * v.hi, a * v.lo};
}

}  // namespace gentropy
