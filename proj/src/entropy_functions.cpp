#include "gentropy/entropy_functions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace gentropy {

namespace {

constexpr double kLog2E = 1.4426950408889634074;  // log2(e)

// Outward padding for double-precision evaluations of the transcendental
// formulas; generous relative to their actual rounding error.
CertifiedValue pad(double v) {
  double eps = std::abs(v) * 1e-13 + 1e-306;
  return CertifiedValue::from_doubles(v - eps, v + eps);
}

// If x == 2^-t for a positive integer t, return t.
std::optional<unsigned long> dyadic_exponent(const Rational& x) {
  if (x.get_num() != 1) return std::nullopt;
  const BigInt& den = x.get_den();
  if (den <= 1) return std::nullopt;
  if (mpz_popcount(den.get_mpz_t()) != 1) return std::nullopt;
  return mpz_sizeinbase(den.get_mpz_t(), 2) - 1;
}

// Exact log2(1+v) when 1+v is a power of two.
std::optional<Rational> exact_log2_1p(const Rational& v) {
  Rational w = v + 1;
  if (w.get_den() != 1) return std::nullopt;
  const BigInt& n = w.get_num();
  if (n < 1 || mpz_popcount(n.get_mpz_t()) != 1) return std::nullopt;
  return Rational((long)(mpz_sizeinbase(n.get_mpz_t(), 2) - 1));
}

double h_log_iter(double x, int times) {
  for (int i = 0; i < times; ++i) x = std::log2(1.0 + x);
  return x;
}

}  // namespace

int hir_arg_piece(double x) {
  if (x < 1.0) return -1;
  int k = (int)std::floor(std::log2(x) / 2.0);
  while (std::pow(4.0, k + 1) <= x) ++k;
  while (std::pow(4.0, k) > x) --k;
  return k;
}

int h_piece_index(const Rational& v) {
  if (v < 2) return -1;
  int m = 0;
  // 2^(4^(m+1)) grows doubly exponentially; the loop runs a handful of times.
  while (true) {
    BigInt bound = 1;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), 1ULL << (2 * (m + 1)));
    if (v < Rational(bound)) return m;
    ++m;
  }
}

double HFunction::eval(double x) const {
  if (x < 0) throw std::domain_error("HFunction: x < 0");
  switch (kind) {
    case HKind::IR: {
      if (x < 1.0) return x;
      int k = hir_arg_piece(x);
      return std::ldexp(x, -k) + std::ldexp(2.0, k) - 2.0;
    }
    case HKind::Log:
      return std::log2(1.0 + x);
    case HKind::LogIter:
      return h_log_iter(x, iterations);
  }
  return 0;
}

std::optional<Rational> HFunction::eval_exact(const Rational& x) const {
  if (x < 0) throw std::domain_error("HFunction: x < 0");
  switch (kind) {
    case HKind::IR: {
      if (x < 1) return x;
      int k = 0;
      while (true) {
        BigInt hi = 1;
        mpz_mul_2exp(hi.get_mpz_t(), hi.get_mpz_t(), 2 * (k + 1));  // 4^(k+1)
        if (x < Rational(hi)) break;
        ++k;
      }
      BigInt two_k = 1, two_k1 = 1;
      mpz_mul_2exp(two_k.get_mpz_t(), two_k.get_mpz_t(), k);
      mpz_mul_2exp(two_k1.get_mpz_t(), two_k1.get_mpz_t(), k + 1);
      return x / Rational(two_k) + Rational(two_k1) - 2;
    }
    case HKind::Log:
      return exact_log2_1p(x);
    case HKind::LogIter: {
      Rational v = x;
      for (int i = 0; i < iterations; ++i) {
        auto next = exact_log2_1p(v);
        if (!next) return std::nullopt;
        v = *next;
      }
      return v;
    }
  }
  return std::nullopt;
}

CertifiedValue HFunction::eval_point(const Rational& x) const {
  if (auto e = eval_exact(x)) return CertifiedValue::point(*e);
  return pad(eval(to_double(x)));
}

CertifiedValue HFunction::eval_interval(const CertifiedValue& x) const {
  CertifiedValue a = eval_point(x.lo), b = eval_point(x.hi);
  return {a.lo, b.hi};
}

EntropyFunction EntropyFunction::eta() {
  EntropyFunction f;
  f.kind_ = GKind::Eta;
  f.finish_setup();
  return f;
}

EntropyFunction EntropyFunction::g0(double base) {
  if (base <= 1) throw std::invalid_argument("g0: base must exceed 1");
  EntropyFunction f;
  f.kind_ = GKind::G0;
  f.base_ = base;
  f.finish_setup();
  return f;
}

EntropyFunction EntropyFunction::gtilde(double base, double alpha) {
  if (base <= 1 || alpha <= 0 || alpha >= 1) throw std::invalid_argument("gtilde: need a>1, alpha in (0,1)");
  EntropyFunction f;
  f.kind_ = GKind::GTilde;
  f.base_ = base;
  f.alpha_ = alpha;
  f.finish_setup();
  return f;
}

EntropyFunction EntropyFunction::gir() {
  EntropyFunction f;
  f.kind_ = GKind::GIR;
  f.finish_setup();
  return f;
}

EntropyFunction EntropyFunction::gm(int m) {
  if (m < 0) throw std::invalid_argument("gm: m >= 0");
  EntropyFunction f;
  f.kind_ = GKind::GM;
  f.m_ = m;
  f.finish_setup();
  return f;
}

EntropyFunction EntropyFunction::custom_unchecked(std::vector<std::pair<Rational, Rational>> table) {
  if (table.size() < 2) throw std::invalid_argument("custom: need at least two points");
  if (table.front().first != 0 || table.front().second != 0)
    throw std::invalid_argument("custom: table must start at (0,0)");
  if (table.back().first != 1) throw std::invalid_argument("custom: table must end at x=1");
  for (size_t i = 1; i < table.size(); ++i)
    if (table[i].first <= table[i - 1].first)
      throw std::invalid_argument("custom: x values must increase");
  EntropyFunction f;
  f.kind_ = GKind::Custom;
  f.table_ = std::move(table);
  f.finish_setup();
  return f;
}

EntropyFunction EntropyFunction::custom(std::vector<std::pair<Rational, Rational>> table) {
  EntropyFunction f = custom_unchecked(std::move(table));
  const auto& t = f.table_;
  for (size_t i = 2; i < t.size(); ++i) {
    Rational s1 = (t[i - 1].second - t[i - 2].second) / (t[i - 1].first - t[i - 2].first);
    Rational s2 = (t[i].second - t[i - 1].second) / (t[i].first - t[i - 1].first);
    if (s2 > s1) throw std::invalid_argument("custom: tabulation is not concave");
  }
  return f;
}

void EntropyFunction::finish_setup() {
  // Bracket the interior maximum by ternary search; all catalog members are
  // concave so the search is valid.
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (eval(m1) < eval(m2))
      lo = m1;
    else
      hi = m2;
  }
  argmax_ = (lo + hi) / 2;
  max_value_ = std::max({eval(argmax_), eval(0.0), eval(1.0)}) + 1e-12;
}

std::string EntropyFunction::spec_string() const {
  std::ostringstream os;
  switch (kind_) {
    case GKind::Eta: return "eta";
    case GKind::G0: os << "g0:a=" << base_; return os.str();
    case GKind::GTilde: os << "gtilde:a=" << base_ << ",alpha=" << alpha_; return os.str();
    case GKind::GIR: return "gir";
    case GKind::GM: os << "gm:m=" << m_; return os.str();
    case GKind::Custom: return "custom";
  }
  return "?";
}

bool EntropyFunction::is_subderivative_catalog() const {
  return kind_ == GKind::Eta || kind_ == GKind::G0 || kind_ == GKind::GTilde || kind_ == GKind::GIR;
}

double EntropyFunction::eval(double x) const {
  if (x < 0 || x > 1) throw std::domain_error("EntropyFunction: x outside [0,1]");
  if (x == 0) return 0.0;
  double lg = std::log(base_);
  switch (kind_) {
    case GKind::Eta:
      return x == 1.0 ? 0.0 : -x * std::log2(x);
    case GKind::G0:
      return x * std::log1p(-std::log(x) / lg) / lg;
    case GKind::GTilde:
      return x * std::pow(-std::log(x) / lg, alpha_);
    case GKind::GIR:
      return x * HFunction::iksanow_rosler().eval(-std::log2(x));
    case GKind::GM:
      return x * h_log_iter(-std::log2(x), m_ + 1);
    case GKind::Custom: {
      Rational q = rational_from_double(x);
      auto e = eval_exact(q);
      return to_double(*e);
    }
  }
  return 0;
}

std::optional<Rational> EntropyFunction::eval_exact(const Rational& x) const {
  if (x < 0 || x > 1) throw std::domain_error("EntropyFunction: x outside [0,1]");
  if (x == 0) return Rational(0);
  if (kind_ == GKind::Custom) {
    for (size_t i = 1; i < table_.size(); ++i) {
      if (x <= table_[i].first) {
        const auto& [x0, y0] = table_[i - 1];
        const auto& [x1, y1] = table_[i];
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
      }
    }
    return table_.back().second;
  }
  if (x == 1) return Rational(0);
  auto t = dyadic_exponent(x);
  if (!t) return std::nullopt;
  Rational tr((long)*t);
  switch (kind_) {
    case GKind::Eta:
      return base_ == 2.0 ? std::optional<Rational>(tr * x) : std::nullopt;
    case GKind::G0: {
      if (base_ != 2.0) return std::nullopt;
      auto l = exact_log2_1p(tr);
      if (!l) return std::nullopt;
      return *l * x;
    }
    case GKind::GIR: {
      auto h = HFunction::iksanow_rosler().eval_exact(tr);
      return *h * x;
    }
    case GKind::GM: {
      auto h = HFunction::log_iterated(m_ + 1).eval_exact(tr);
      if (!h) return std::nullopt;
      return *h * x;
    }
    default:
      return std::nullopt;
  }
}

CertifiedValue EntropyFunction::eval_point(const Rational& x) const {
  if (auto e = eval_exact(x)) return CertifiedValue::point(*e);
  return pad(eval(to_double(x)));
}

CertifiedValue EntropyFunction::eval_interval(const CertifiedValue& x) const {
  if (x.lo < 0 || x.hi > 1) throw std::domain_error("eval_interval: x outside [0,1]");
  CertifiedValue a = eval_point(x.lo), b = eval_point(x.hi);
  // Concavity: the minimum over [lo,hi] is attained at an endpoint; the
  // maximum is an endpoint unless the interior maximum lies inside.
  Rational lo = std::min(a.lo, b.lo);
  Rational hi = std::max(a.hi, b.hi);
  double axm = argmax_;
  if (to_double_down(x.lo) <= axm + 1e-9 && to_double_up(x.hi) >= axm - 1e-9)
    hi = std::max(hi, rational_from_double(max_value_));
  return {lo, hi};
}

double EntropyFunction::phi(double x) const {
  if (x <= 0) throw std::domain_error("phi: x must be positive");
  return eval(x) / x;
}

double EntropyFunction::phi_of_log2(double t) const {
  if (t < 0) throw std::domain_error("phi_of_log2: t < 0");
  double r = std::log(2.0) / std::log(base_);  // log_a 2
  switch (kind_) {
    case GKind::Eta:
      return t;
    case GKind::G0:
      // phi(2^-t) = log_a(1 + t log_a 2)
      return std::log1p(t * r) / std::log(base_);
    case GKind::GTilde:
      return std::pow(t * r, alpha_);
    case GKind::GIR:
      return HFunction::iksanow_rosler().eval(t);
    case GKind::GM:
      return h_log_iter(t, m_ + 1);
    case GKind::Custom: {
      double x = std::exp2(-t);
      Rational q = rational_from_double(x);
      if (q < table_[1].first) {
        // below the first knot the interpolant is linear through the origin
        return to_double(table_[1].second / table_[1].first);
      }
      return phi(x);
    }
  }
  return 0;
}

CertifiedValue EntropyFunction::phi_point(const Rational& x) const {
  if (x <= 0) throw std::domain_error("phi_point: x must be positive");
  CertifiedValue g = eval_point(x);
  return {g.lo / x, g.hi / x};
}

double EntropyFunction::derivative(double x) const {
  double lg = std::log(base_);
  switch (kind_) {
    case GKind::Eta:
      return -std::log2(x) - kLog2E;
    case GKind::G0: {
      double L = std::log(x) / lg;
      return std::log1p(-L) / lg - 1.0 / ((1.0 - L) * lg * lg);
    }
    case GKind::GTilde: {
      double L = -std::log(x) / lg;  // positive
      return std::pow(L, alpha_) - alpha_ * std::pow(L, alpha_ - 1.0) / lg;
    }
    case GKind::GIR: {
      double t = -std::log2(x);
      int k = hir_arg_piece(t);
      if (k < 0) return -std::log2(x) - kLog2E;  // the -x log2 x piece
      // g = 2^-k * (-x log2 x) + (2^(k+1)-2) x on this piece
      return std::ldexp(-std::log2(x) - kLog2E, -k) + std::ldexp(2.0, k) - 2.0;
    }
    default: {
      double h = 1e-6;
      double a = std::max(1e-12, x - h), b = std::min(1.0, x + h);
      double d1 = (eval(b) - eval(a)) / (b - a);
      double h2 = h / 2;
      double a2 = std::max(1e-12, x - h2), b2 = std::min(1.0, x + h2);
      double d2 = (eval(b2) - eval(a2)) / (b2 - a2);
      return 2 * d2 - d1;  // Richardson
    }
  }
}

double EntropyFunction::d_max() const {
  double g1 = eval(1.0);
  return max_value_ - std::min(0.0, g1);
}

double EntropyFunction::left_derivative_half() const {
  if (kind_ == GKind::Custom) {
    for (size_t i = 1; i < table_.size(); ++i) {
      if (Rational(1, 2) <= table_[i].first) {
        return to_double((table_[i].second - table_[i - 1].second) /
                         (table_[i].first - table_[i - 1].first));
      }
    }
  }
  return derivative(0.5);
}

double EntropyFunction::max_value() const { return max_value_; }
double EntropyFunction::argmax() const { return argmax_; }

CertifiedValue EntropyFunction::jensen_bound(const BigInt& n) const {
  if (n < 1) throw std::invalid_argument("jensen_bound: n >= 1");
  Rational inv(1);
  inv /= Rational(n);
  return Rational(n) * eval_point(inv);
}

ClassifyResult EntropyFunction::classify(int dyadic_depth) const {
  if (dyadic_depth < 8) throw std::invalid_argument("classify: depth >= 8");
  ClassifyResult res;
  res.depth = dyadic_depth;
  std::vector<double> r(dyadic_depth + 1, 0.0);
  for (int j = 1; j <= dyadic_depth; ++j) r[j] = phi_of_log2((double)j) / j;
  res.r_depth = r[dyadic_depth];

  int tail = std::min(10, dyadic_depth - 1);
  bool decreasing = true, increasing = true;
  for (int j = dyadic_depth - tail + 1; j <= dyadic_depth; ++j) {
    if (r[j] > r[j - 1] + 1e-15) decreasing = false;
    if (r[j] < r[j - 1] - 1e-15) increasing = false;
  }
  bool stabilized = std::abs(r[dyadic_depth] - r[dyadic_depth - tail]) < 1e-3;

  if (stabilized && res.r_depth > 1e-6) {
    res.cls = GClass::G0Sh;
    res.C = res.r_depth;
  } else if (decreasing && res.r_depth < 0.2) {
    res.cls = GClass::G00;
  } else if (increasing && res.r_depth > 5.0) {
    res.cls = GClass::G0Inf;
  } else {
    res.cls = GClass::Unknown;
  }
  return res;
}

PropertyReport EntropyFunction::property_check(GProperty p, int samples, std::uint64_t seed) const {
  if (samples < 100) throw std::invalid_argument("property_check: samples >= 100");
  PropertyReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double tol = 1e-9;
  for (int i = 0; i < samples; ++i) {
    double x = unif(rng), y = unif(rng), lam = unif(rng);
    double lhs = 0, rhs = 0;
    bool ok = true;
    std::ostringstream ce;
    switch (p) {
      case GProperty::Subadditive:
        if (x + y > 1.0) { x /= 2; y /= 2; }
        lhs = eval(x + y);
        rhs = eval(x) + eval(y);
        ok = lhs <= rhs + tol;
        if (!ok) ce << "g(x+y) > g(x)+g(y) at x=" << x << " y=" << y;
        break;
      case GProperty::Subderivative:
        lhs = eval(x * y);
        rhs = x * eval(y) + y * eval(x);
        ok = lhs <= rhs + tol;
        if (!ok) ce << "g(xy) > x g(y)+y g(x) at x=" << x << " y=" << y;
        break;
      case GProperty::Concave:
        lhs = eval(lam * x + (1 - lam) * y);
        rhs = lam * eval(x) + (1 - lam) * eval(y);
        ok = lhs >= rhs - tol;
        if (!ok) ce << "concavity fails at x=" << x << " y=" << y << " lam=" << lam;
        break;
      case GProperty::PhiDecreasing: {
        double a = std::min(x, y) + 1e-12, b = std::max(x, y) + 2e-12;
        lhs = phi(a);
        rhs = phi(b);
        ok = lhs >= rhs - tol;
        if (!ok) ce << "phi increases from x=" << a << " to y=" << b;
        break;
      }
    }
    ++rep.checked;
    if (!ok) {
      rep.passed = false;
      rep.counterexample = ce.str();
      break;
    }
  }
  return rep;
}

namespace {
double parse_param(const std::string& params, const std::string& key, double fallback) {
  auto pos = params.find(key + "=");
  if (pos == std::string::npos) return fallback;
  return std::stod(params.substr(pos + key.size() + 1));
}
}  // namespace

EntropyFunction parse_g_spec(const std::string& spec) {
  std::string name = spec, params;
  if (auto colon = spec.find(':'); colon != std::string::npos) {
    name = spec.substr(0, colon);
    params = spec.substr(colon + 1);
  }
  if (name == "eta") return EntropyFunction::eta();
  if (name == "g0") return EntropyFunction::g0(parse_param(params, "a", 2.0));
  if (name == "gtilde")
    return EntropyFunction::gtilde(parse_param(params, "a", 2.0), parse_param(params, "alpha", 0.5));
  if (name == "gir") return EntropyFunction::gir();
  if (name == "gm") return EntropyFunction::gm((int)parse_param(params, "m", 1));
  throw std::invalid_argument("unknown entropy function spec: " + spec);
}

HFunction parse_h_spec(const std::string& spec) {
  if (spec == "hir") return HFunction::iksanow_rosler();
  if (spec == "hlog") return HFunction::log2p1();
  if (spec.rfind("hlogiter", 0) == 0) {
    int m = (int)parse_param(spec, "m", 2);
    return HFunction::log_iterated(m);
  }
  throw std::invalid_argument("unknown h spec: " + spec);
}

}  // namespace gentropy
