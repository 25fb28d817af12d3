#include "gentropy/rates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gentropy {

namespace {

CertifiedValue pad_interval(double lo, double hi) {
  double dlo = lo - std::abs(lo) * 1e-12 - 1e-300;
  double dhi = hi + std::abs(hi) * 1e-12 + 1e-300;
  return CertifiedValue::from_doubles(dlo, dhi);
}

}  // namespace

SequenceSpec SequenceSpec::n() { return {}; }

SequenceSpec SequenceSpec::log2n() {
  SequenceSpec s;
  s.kind = Kind::Log2N;
  return s;
}

SequenceSpec SequenceSpec::h_of_log2n(HFunction hf) {
  SequenceSpec s;
  s.kind = Kind::HOfLog2N;
  s.h = hf;
  return s;
}

SequenceSpec SequenceSpec::phi_of_2pow_minus_n(EntropyFunction gf) {
  SequenceSpec s;
  s.kind = Kind::PhiOf2PowMinusN;
  s.g = std::make_shared<EntropyFunction>(std::move(gf));
  return s;
}

SequenceSpec SequenceSpec::custom(std::vector<std::pair<double, double>> table) {
  if (table.size() < 2) throw std::invalid_argument("custom sequence: need at least two points");
  for (size_t i = 1; i < table.size(); ++i)
    if (table[i].first <= table[i - 1].first || table[i].second <= table[i - 1].second)
      throw std::invalid_argument("custom sequence: must be strictly increasing");
  SequenceSpec s;
  s.kind = Kind::Custom;
  s.table = std::move(table);
  return s;
}

double SequenceSpec::eval(double x) const {
  if (x < 1) throw std::invalid_argument("sequence eval: n >= 1");
  switch (kind) {
    case Kind::N:
      return x;
    case Kind::Log2N:
      return std::log2(x);
    case Kind::HOfLog2N:
      return h.eval(std::log2(x));
    case Kind::PhiOf2PowMinusN:
      return g->phi_of_log2(x);
    case Kind::Custom: {
      if (x <= table.front().first) return table.front().second;
      for (size_t i = 1; i < table.size(); ++i) {
        if (x <= table[i].first) {
          auto [x0, y0] = table[i - 1];
          auto [x1, y1] = table[i];
          return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
        }
      }
      return table.back().second;
    }
  }
  return 0;
}

std::string SequenceSpec::describe() const {
  switch (kind) {
    case Kind::N: return "n";
    case Kind::Log2N: return "log2(n)";
    case Kind::HOfLog2N: return "h(log2(n))";
    case Kind::PhiOf2PowMinusN: return "phi_g(2^-n)";
    case Kind::Custom: return "custom";
  }
  return "?";
}

Reindexer::Reindexer(std::vector<Rational> th) : thresholds(std::move(th)) {
  if (thresholds.empty()) throw std::invalid_argument("reindexer: empty thresholds");
  for (size_t i = 1; i < thresholds.size(); ++i)
    if (thresholds[i] <= thresholds[i - 1])
      throw std::invalid_argument("reindexer: thresholds must be strictly increasing");
}

const Rational& Reindexer::threshold_for(const Rational& n) const {
  if (n < thresholds.front())
    throw std::invalid_argument("reindexer: n below the first threshold");
  auto it = std::upper_bound(thresholds.begin(), thresholds.end(), n);
  return *(it - 1);
}

double Reindexer::eval(const SequenceSpec& base, const Rational& n) const {
  return base.eval(to_double(threshold_for(n)));
}

RateReport rate_report(const EntropySeries& H, const SequenceSpec& a, const Reindexer* nu) {
  RateReport rep;
  bool first = true;
  for (const auto& e : H.entries) {
    double denom;
    try {
      denom = nu ? nu->eval(a, Rational((unsigned long)e.n)) : a.eval((double)e.n);
    } catch (const std::invalid_argument&) {
      continue;  // below the first reindexing threshold
    }
    if (denom <= 0) continue;
    CertifiedValue ratio = e.H / pad_interval(denom, denom);
    RatePoint pt{e.n, ratio, denom};
    double lo = to_double_down(ratio.lo), hi = to_double_up(ratio.hi);
    if (first) {
      rep.window_inf = lo;
      rep.window_sup = hi;
      rep.window_lo = rep.window_hi = e.n;
      first = false;
    } else {
      rep.window_inf = std::min(rep.window_inf, lo);
      rep.window_sup = std::max(rep.window_sup, hi);
      rep.window_lo = std::min(rep.window_lo, e.n);
      rep.window_hi = std::max(rep.window_hi, e.n);
    }
    rep.points.push_back(std::move(pt));
  }
  std::ostringstream os;
  if (rep.points.empty()) {
    os << "no evaluable points (denominator undefined or nonpositive on the series range)";
  } else {
    os << "window n in [" << rep.window_lo << "," << rep.window_hi << "]: inf >= "
       << rep.window_inf << ", sup <= " << rep.window_sup
       << " (finite-window evidence, no limit claimed)";
  }
  rep.verdict = os.str();
  return rep;
}

Rational lambda_E(const Rational& muE) {
  if (muE <= 0 || muE >= 1) throw std::invalid_argument("lambda_E: mu(E) in (0,1)");
  return muE * (1 - muE) / 4;  // psi(x)/8 with psi(x) = 2x(1-x)
}

CertifiedValue lambda_E(const CertifiedValue& muE) {
  if (muE.lo <= 0 || muE.hi >= 1) throw std::invalid_argument("lambda_E: mu(E) in (0,1)");
  // x(1-x)/4 on an interval: monotone up to 1/2, down after.
  Rational a = lambda_E(muE.lo), b = lambda_E(muE.hi);
  Rational lo = std::min(a, b), hi = std::max(a, b);
  if (muE.contains(Rational(1, 2))) hi = Rational(1, 16);
  return {lo, hi};
}

CertifiedValue h_of_log2(const HFunction& h, const CertifiedValue& v) {
  if (v.hi <= 1) return {};  // log2 <= 0: clamp h at 0
  double tlo = v.lo <= 1 ? 0.0 : std::max(0.0, std::log2(to_double_down(v.lo)) * (1 - 1e-12));
  double thi = std::log2(to_double_up(v.hi)) * (1 + 1e-12) + 1e-300;
  double hlo = h.eval(tlo), hhi = h.eval(thi);
  return pad_interval(hlo, hhi);  // h nondecreasing
}

QRMeasures q_r_measures(const SymbolicNames& names, const CertifiedValue& muE, const BigInt& p_n,
                        const Rational& x_n) {
  QRMeasures qr;
  CertifiedValue lam = lambda_E(muE);
  qr.floor_lambda_p = floor_rat(lam.lo * Rational(p_n));
  CertifiedValue q_mass;  // normalized mu(Q_n), entries already live inside tau_n
  if (qr.floor_lambda_p >= 1)
    q_mass = names.names.period_range_measure(1, qr.floor_lambda_p.get_ui());
  CertifiedValue tau = CertifiedValue::point(x_n) / names.normalizer;
  qr.q_frac = CertifiedValue(std::max(Rational(0), std::min(Rational(q_mass.lo / tau.hi), Rational(1))),
                             std::max(Rational(0), std::min(Rational(q_mass.hi / tau.lo), Rational(1))));
  Rational rlo = std::max(Rational(0), Rational(tau.lo - q_mass.hi));
  Rational rhi = std::max(rlo, Rational(tau.hi - q_mass.lo));
  qr.r_measure = {rlo, rhi};
  return qr;
}

Theorem54Report theorem54_check(const EntropyFunction& g, const SymbolicNames& names,
                                const CertifiedValue& muE, const BigInt& p_n, const Rational& x_n) {
  Theorem54Report rep;
  rep.H = entropy_from_names(g, names);
  rep.qr = q_r_measures(names, muE, p_n, x_n);

  HFunction h = HFunction::iksanow_rosler();
  rep.degenerate = rep.qr.floor_lambda_p < 2;
  CertifiedValue harg = CertifiedValue::point(Rational(rep.qr.floor_lambda_p) / 2);
  CertifiedValue hval = rep.degenerate ? CertifiedValue() : h_of_log2(h, harg);
  rep.rhs = CertifiedValue::point(rep.qr.r_measure.lo) * hval - CertifiedValue::point(Rational(2));
  rep.holds = rep.H.lo >= rep.rhs.hi;

  CertifiedValue denom = h_of_log2(h, CertifiedValue::point(Rational(2 * p_n * p_n)));
  rep.ratio = rep.H / denom;
  return rep;
}

Rational d_xi0_prefix(const PrimeSeq& primes) {
  if (primes.size() < 2) throw std::invalid_argument("d_xi0: need at least two primes");
  Rational sup = 0, sum = 0;
  for (std::size_t m = 1; m < primes.size(); ++m) {
    const BigInt& prev = primes.primes[m - 1];
    const BigInt& cur = primes.primes[m];
    sup = std::max(sup, Rational(Rational(prev * prev * prev) / Rational(cur)));
    sum += Rational(prev * prev) / Rational(cur);
  }
  return (6 * sup + 2) * (1 + sum) + 10;
}

Fact59Report fact59_check(const RankOneSystem& sys, int n, const BigInt& k) {
  if (n < 1) throw std::invalid_argument("fact59_check: n >= 1");
  const Stage& st = sys.stage(n);
  const BigInt& p = sys.primes().primes[(std::size_t)n];
  BigInt q = 6 * sys.primes().primes[(std::size_t)n - 1] * sys.primes().primes[(std::size_t)n - 1] + 1;

  Fact59Report rep;
  rep.d = d_xi0_prefix(sys.primes());
  BigInt num = st.k * q - k;
  mpz_fdiv_q(rep.l.get_mpz_t(), num.get_mpz_t(), q.get_mpz_t());
  rep.l_positive = rep.l > 1;

  // B = top (p_n - l q) levels of sigma_n plus the off-tower set.
  BigInt band = p - rep.l * q;
  if (band < 0) band = 0;
  if (band > p * p) band = p * p;
  Rational band_leb = Rational(band) * st.x / Rational(p * p);
  TailBound tb = sys.tail_bound(n);
  Rational tail = tb.bounded ? tb.value.hi : Rational(0);
  CertifiedValue norm = sys.normalizer(n);
  CertifiedValue muB(band_leb / norm.hi, (band_leb + tail) / norm.lo);
  rep.k_muB_plus_1 = CertifiedValue::point(Rational(k)) * muB + CertifiedValue::point(Rational(1));
  rep.holds = rep.k_muB_plus_1.hi < rep.d;
  return rep;
}

Lemma58Report lemma58_bound(const RankOneSystem& sys, const BigInt& k, int n, double eps, double a,
                            int r, bool strict_range) {
  if (n < 1) throw std::invalid_argument("lemma58_bound: n >= 1");
  if (eps <= 0 || a <= 0 || a >= 0.25 || r < 1)
    throw std::invalid_argument("lemma58_bound: need eps > 0, 0 < a < 1/4, r >= 1");
  const BigInt& pprev = sys.primes().primes[(std::size_t)n - 1];
  const BigInt& p = sys.primes().primes[(std::size_t)n];

  Lemma58Report rep;
  rep.d = d_xi0_prefix(sys.primes());
  BigInt sixp2 = 6 * pprev * pprev;
  rep.m1 = h_piece_index(Rational(sixp2));
  rep.m2 = h_piece_index(Rational(2 * sixp2 + k));
  if (rep.m1 < 0 || rep.m2 < 0) throw std::logic_error("lemma58_bound: piece index underflow");

  double q54 = std::pow(to_double(Rational(sixp2 + 1)), 1.25);
  rep.k_in_range = to_double(Rational(k)) >= q54 && Rational(k) <= rational_from_double(a) * Rational(p);
  if (strict_range && !rep.k_in_range)
    throw std::invalid_argument("lemma58_bound: k outside [(6p^2+1)^(5/4), a p_n]");

  auto log2_of = [](const Rational& v) {
    double d = std::log2(to_double(v));
    return pad_interval(d, d);
  };
  Rational pm1 = Rational(1) / Rational((long)(1L << rep.m1));
  Rational pm2 = Rational(1) / Rational((long)(1L << rep.m2));
  CertifiedValue termA =
      CertifiedValue::point(Rational(r)) *
      (CertifiedValue::point(pm1) * log2_of(Rational(sixp2)) +
       CertifiedValue::point(Rational((long)(1L << (rep.m1 + 1)))));
  CertifiedValue termC =
      CertifiedValue::point(Rational(k) / Rational(p)) *
      pad_interval(1 + eps, 1 + eps) *
      (CertifiedValue::point(pm2) * log2_of(Rational(k)) + CertifiedValue::point(pm2) +
       CertifiedValue::point(Rational((long)(1L << (rep.m2 + 1)))));
  rep.bound = termA + CertifiedValue::point(rep.d + 2) + termC;
  return rep;
}

NonIsoReport nonisomorphism_report(const PrimeSeq& xi0, const PrimeSeq& xi, double a, double b,
                                   int r, std::uint64_t l_lo, std::uint64_t l_hi,
                                   std::uint64_t l_step) {
  if (a <= 0 || b <= 0 || a + b >= 0.25)
    throw std::invalid_argument("nonisomorphism_report: need a,b > 0 and a + b < 1/4");
  if (r < 1) throw std::invalid_argument("nonisomorphism_report: r >= 1");
  if (l_lo < 1 || l_lo > l_hi || l_step < 1)
    throw std::invalid_argument("nonisomorphism_report: bad l range");

  NonIsoReport rep;
  rep.threshold = b / (2.0 * r);

  rep.growth_condition_ok = true;
  for (std::size_t i = 1; i < xi0.size(); ++i) {
    const BigInt& prev = xi0.primes[i - 1];
    const BigInt& cur = xi0.primes[i];
    rep.sup_p3_ratio = std::max(rep.sup_p3_ratio, to_double(Rational(prev * prev * prev) / Rational(cur)));
    BigInt pow;
    mpz_pow_ui(pow.get_mpz_t(), prev.get_mpz_t(), (unsigned long)(2 * r));
    if (cur >= pow) rep.growth_condition_ok = false;
  }

  // Reindexer thresholds: a*p_n (real) and 2*q_n^2.
  std::vector<double> thrA;
  for (const auto& p : xi0.primes) thrA.push_back(a * to_double(Rational(p)));
  std::vector<double> thrZ;
  for (const auto& q : xi.primes) thrZ.push_back(2.0 * to_double(Rational(q * q)));

  HFunction h = HFunction::iksanow_rosler();
  bool any = false;
  for (std::uint64_t l = l_lo; l <= l_hi; l += l_step) {
    double la = -1, lz = -1;
    for (double t : thrA)
      if (t <= (double)l) la = t;
    for (double t : thrZ)
      if (t <= (double)l) lz = t;
    if (la <= 1 || lz <= 1) continue;  // below thresholds, or h(log2 .) vanishes
    double num = h.eval(std::log2(la));
    double den = h.eval(std::log2(lz));
    if (den <= 0) continue;
    double ratio = num / den;
    if (!any || ratio < rep.range_inf) rep.range_inf = ratio;
    any = true;
    if (rep.ratios.size() < 10000) rep.ratios.emplace_back(l, ratio);
  }

  if (!any)
    rep.verdict = "insufficient-data";
  else if (rep.range_inf < rep.threshold)
    rep.verdict = "criterion-satisfied-on-range";
  else
    rep.verdict = "not-satisfied";
  return rep;
}

}  // namespace gentropy
