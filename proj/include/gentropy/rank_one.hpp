#pragma once

#include <cstdint>
#include <vector>

#include "gentropy/interval_set.hpp"
#include "gentropy/rational.hpp"
#include "gentropy/words.hpp"

namespace gentropy {

// Strictly increasing primes p0 < p1 < ... with (6 p_n^2 + 1) / p_{n+1} < 1.
struct PrimeSeq {
  std::vector<BigInt> primes;

  static PrimeSeq validate(const std::vector<BigInt>& seq);
  std::size_t size() const { return primes.size(); }
};

// One stage of the cutting-and-stacking construction. Every level is a single
// interval [offset, offset + level_len); the tower occupies [0, x).
struct Stage {
  int n = 0;
  BigInt height;      // 2 p_n^2
  Rational x;         // tower measure
  Rational y;         // after the first spacer (n >= 1)
  BigInt k, j;        // p_n = k (6 p_{n-1}^2 + 1) + j  (n >= 1)
  Rational level_len; // ell_n
  bool levels_materialized = false;
  std::vector<Rational> level_offsets;
};

struct TailBound {
  CertifiedValue value;  // [0, upper] when bounded
  bool bounded = false;  // false: no further prime, normalization is stage-relative
};

class RankOneSystem {
 public:
  // Computes scalar stage data for every prime; materializes level geometry
  // for stages up to `stages` whose level count fits the budget.
  static RankOneSystem build(const PrimeSeq& seq, int stages,
                             std::uint64_t level_budget = 1u << 21);

  const PrimeSeq& primes() const { return primes_; }
  const std::vector<Stage>& stages() const { return stages_; }
  const Stage& stage(int n) const;

  // Map sending level i to level i+1; defined on [0, x_n) minus the top level.
  PiecewiseTranslation stage_map(int n) const;

  // Union of the given stage-n levels as a set.
  IntervalSet level_set(int n, const std::vector<std::uint64_t>& indices) const;

  // 01-name of the base of tau_n for E = union of the given stage-m levels.
  // Returned as a substitution plan; materialize within a memory budget.
  SubstitutionPlan base_word_plan(int n, int m, const std::vector<std::uint64_t>& e_levels) const;

  // Upper bound on mu_L(J \ [0, x_n]): exact increments over known primes
  // plus a geometric majorant for the unseen remainder.
  TailBound tail_bound(int n) const;

  // mu_L(J) as an interval based on the last stage with a bounded tail.
  CertifiedValue normalizer(int n) const;
  bool normalizer_stage_relative(int n) const { return !tail_bound(n).bounded; }

 private:
  PrimeSeq primes_;
  std::vector<Stage> stages_;
};

}  // namespace gentropy
