#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gentropy/entropy_functions.hpp"
#include "gentropy/orbit_entropy.hpp"
#include "gentropy/rank_one.hpp"

namespace gentropy {

// Named growth sequences a_n used as rate denominators.
struct SequenceSpec {
  enum class Kind { N, Log2N, HOfLog2N, PhiOf2PowMinusN, Custom };
  Kind kind = Kind::N;
  HFunction h;                                // HOfLog2N
  std::shared_ptr<EntropyFunction> g;         // PhiOf2PowMinusN
  std::vector<std::pair<double, double>> table;  // Custom: (n, a_n), interpolated

  static SequenceSpec n();
  static SequenceSpec log2n();
  static SequenceSpec h_of_log2n(HFunction hf);
  static SequenceSpec phi_of_2pow_minus_n(EntropyFunction gf);
  static SequenceSpec custom(std::vector<std::pair<double, double>> table);

  // Evaluable at any real argument >= 1 (reindexing may supply real thresholds).
  double eval(double n) const;
  std::string describe() const;
};

// Step-function resampling along increasing (possibly real) thresholds.
struct Reindexer {
  std::vector<Rational> thresholds;

  explicit Reindexer(std::vector<Rational> th);
  // Largest threshold <= n; throws when n is below the first threshold.
  const Rational& threshold_for(const Rational& n) const;
  double eval(const SequenceSpec& base, const Rational& n) const;
};

struct RatePoint {
  std::uint64_t n = 0;
  CertifiedValue ratio;
  double denom = 0;
};

struct RateReport {
  std::vector<RatePoint> points;
  double window_inf = 0, window_sup = 0;  // over ratio midpoints' certified bounds
  std::uint64_t window_lo = 0, window_hi = 0;
  std::string verdict;  // always names the window; never claims a limit
};

RateReport rate_report(const EntropySeries& H, const SequenceSpec& a,
                       const Reindexer* nu = nullptr);

// lambda_E = psi(mu(E))/8 with psi(x) = 2x(1-x).
Rational lambda_E(const Rational& muE);
CertifiedValue lambda_E(const CertifiedValue& muE);

// h(log2 v) as a certified value; h clamped at 0 for v <= 1.
CertifiedValue h_of_log2(const HFunction& h, const CertifiedValue& v);

struct QRMeasures {
  BigInt floor_lambda_p;     // conservative floor over the certified lambda interval
  CertifiedValue q_frac;     // mu(Q_n ∩ tau_n) / mu(tau_n)
  CertifiedValue r_measure;  // mu(R_n) = mu(tau_n) - mu(Q_n ∩ tau_n), normalized
};

// names must hold P_{2 p_n^2}^E measures for stage n.
QRMeasures q_r_measures(const SymbolicNames& names, const CertifiedValue& muE, const BigInt& p_n,
                        const Rational& x_n);

struct Theorem54Report {
  CertifiedValue H;
  CertifiedValue rhs;    // mu(R).lo * h(log2(floor(lambda p)/2)) - 2
  bool degenerate = false;  // floor(lambda p) < 2: the bound is vacuous
  bool holds = false;       // H.lo >= rhs.hi
  CertifiedValue ratio;     // H / h(log2 2 p_n^2)
  QRMeasures qr;
};

Theorem54Report theorem54_check(const EntropyFunction& g, const SymbolicNames& names,
                                const CertifiedValue& muE, const BigInt& p_n, const Rational& x_n);

// Prefix evaluation of d_{xi0}; the true value sums an infinite series.
Rational d_xi0_prefix(const PrimeSeq& primes);

struct Fact59Report {
  BigInt l;
  bool l_positive = false;  // the lemma's argument needs l > 1
  CertifiedValue k_muB_plus_1;
  Rational d;
  bool holds = false;
};

Fact59Report fact59_check(const RankOneSystem& sys, int n, const BigInt& k);

struct Lemma58Report {
  int m1 = 0, m2 = 0;
  Rational d;
  CertifiedValue bound;
  bool k_in_range = false;  // k in [(6 p_{n-1}^2 + 1)^{5/4}, a p_n]
};

// Evaluates the three-set upper bound for H(g, P_k^{[0,1)}). When strict_range
// is set, k outside the admissible range is rejected; otherwise membership is
// only reported (the range is empty for small prime prefixes).
Lemma58Report lemma58_bound(const RankOneSystem& sys, const BigInt& k, int n, double eps, double a,
                            int r, bool strict_range = false);

struct NonIsoReport {
  std::string verdict;  // criterion-satisfied-on-range | not-satisfied | insufficient-data
  double threshold = 0;  // b / (2r)
  double range_inf = 0;
  std::vector<std::pair<std::uint64_t, double>> ratios;  // (l, ratio at l)
  double sup_p3_ratio = 0;  // boundedness diagnostic for p_{n-1}^3 / p_n
  bool growth_condition_ok = false;  // p_n < p_{n-1}^{2r} on the prefix
};

NonIsoReport nonisomorphism_report(const PrimeSeq& xi0, const PrimeSeq& xi, double a, double b,
                                   int r, std::uint64_t l_lo, std::uint64_t l_hi,
                                   std::uint64_t l_step = 1);

}  // namespace gentropy
