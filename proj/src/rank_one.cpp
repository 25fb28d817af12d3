#include "gentropy/rank_one.hpp"

#include <stdexcept>
#include <string>

namespace gentropy {

PrimeSeq PrimeSeq::validate(const std::vector<BigInt>& seq) {
  if (seq.empty()) throw std::invalid_argument("prime sequence must be nonempty");
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] < 2 || mpz_probab_prime_p(seq[i].get_mpz_t(), 30) == 0)
      throw std::invalid_argument("entry " + std::to_string(i) + " is not prime: " +
                                  seq[i].get_str());
    if (i > 0) {
      // growth condition: (6 p^2 + 1) / p' < 1
      BigInt q = 6 * seq[i - 1] * seq[i - 1] + 1;
      if (seq[i] <= q)
        throw std::invalid_argument("growth condition fails at index " + std::to_string(i) +
                                    ": (6*" + seq[i - 1].get_str() + "^2+1)/" + seq[i].get_str() +
                                    " >= 1");
    }
  }
  return PrimeSeq{seq};
}

RankOneSystem RankOneSystem::build(const PrimeSeq& seq, int stages, std::uint64_t level_budget) {
  RankOneSystem sys;
  sys.primes_ = seq;

  const BigInt& p0 = seq.primes[0];
  Stage s0;
  s0.n = 0;
  s0.height = 2 * p0 * p0;
  s0.x = Rational(s0.height);
  s0.y = s0.x;
  s0.level_len = 1;
  if (s0.height <= BigInt(level_budget)) {
    s0.levels_materialized = true;
    unsigned long h = s0.height.get_ui();
    s0.level_offsets.reserve(h);
    for (unsigned long i = 0; i < h; ++i) s0.level_offsets.emplace_back((long)i);
  }
  sys.stages_.push_back(std::move(s0));

  for (std::size_t n = 1; n < seq.primes.size(); ++n) {
    const Stage& prev = sys.stages_.back();
    const BigInt& p = seq.primes[n];
    Stage st;
    st.n = (int)n;
    st.height = 2 * p * p;
    BigInt q = 6 * seq.primes[n - 1] * seq.primes[n - 1] + 1;
    st.k = p / q;
    st.j = p - st.k * q;
    const Rational& ell = prev.level_len;
    st.y = prev.x + ell / 3;
    st.x = st.y + Rational(st.j) * ell / (3 * Rational(st.k));
    st.level_len = ell / (6 * Rational(st.k) * Rational(p));

    if ((int)n <= stages && prev.levels_materialized && st.height <= BigInt(level_budget)) {
      // Step 2: three columns plus one spacer above the middle column.
      Rational third = ell / 3;
      std::vector<Rational> offs;
      offs.reserve(st.height.get_ui());
      for (const Rational& o : prev.level_offsets) offs.push_back(o);
      for (const Rational& o : prev.level_offsets) offs.push_back(o + third);
      offs.push_back(prev.x);  // spacer [x_{n-1}, y_n)
      for (const Rational& o : prev.level_offsets) offs.push_back(o + 2 * third);
      Rational len = third;

      // Step 3: cut into k columns and stack.
      unsigned long k = st.k.get_ui();
      if (k > 1) {
        Rational sub = len / (long)k;
        std::size_t base_cnt = offs.size();
        for (unsigned long c = 1; c < k; ++c)
          for (std::size_t i = 0; i < base_cnt; ++i) offs.push_back(offs[i] + (long)c * sub);
        len = sub;
      }

      // Step 4: j spacer levels on top, filling [y_n, x_n).
      unsigned long j = st.j.get_ui();
      for (unsigned long sp = 0; sp < j; ++sp) offs.push_back(st.y + (long)sp * len);

      // Step 5: cut into p columns and stack.
      unsigned long pl = p.get_ui();
      {
        Rational sub = len / (long)pl;
        std::size_t base_cnt = offs.size();
        offs.reserve(base_cnt * pl * 2);
        for (unsigned long c = 1; c < pl; ++c)
          for (std::size_t i = 0; i < base_cnt; ++i) offs.push_back(offs[i] + (long)c * sub);
        len = sub;
      }

      // Step 6: cut into two columns and stack.
      {
        Rational sub = len / 2;
        std::size_t base_cnt = offs.size();
        for (std::size_t i = 0; i < base_cnt; ++i) offs.push_back(offs[i] + sub);
        len = sub;
      }

      if (len != st.level_len) throw std::logic_error("level length bookkeeping mismatch");
      if (BigInt((unsigned long)offs.size()) != st.height)
        throw std::logic_error("level count bookkeeping mismatch");
      st.level_offsets = std::move(offs);
      st.levels_materialized = true;
    }
    sys.stages_.push_back(std::move(st));
  }
  return sys;
}

const Stage& RankOneSystem::stage(int n) const {
  if (n < 0 || (std::size_t)n >= stages_.size()) throw std::out_of_range("stage index");
  return stages_[(std::size_t)n];
}

PiecewiseTranslation RankOneSystem::stage_map(int n) const {
  const Stage& st = stage(n);
  if (!st.levels_materialized) throw std::invalid_argument("stage levels not materialized");
  std::vector<PiecewiseTranslation::Piece> pieces;
  pieces.reserve(st.level_offsets.size());
  for (std::size_t i = 0; i + 1 < st.level_offsets.size(); ++i) {
    const Rational& a = st.level_offsets[i];
    pieces.push_back({Interval(a, a + st.level_len), st.level_offsets[i + 1] - a});
  }
  return PiecewiseTranslation(std::move(pieces));
}

IntervalSet RankOneSystem::level_set(int n, const std::vector<std::uint64_t>& indices) const {
  const Stage& st = stage(n);
  if (!st.levels_materialized) throw std::invalid_argument("stage levels not materialized");
  std::vector<Interval> ivs;
  ivs.reserve(indices.size());
  for (std::uint64_t i : indices) {
    if (i >= st.level_offsets.size()) throw std::out_of_range("level index");
    const Rational& a = st.level_offsets[i];
    ivs.emplace_back(a, a + st.level_len);
  }
  return IntervalSet::canonicalize(std::move(ivs));
}

SubstitutionPlan RankOneSystem::base_word_plan(int n, int m,
                                               const std::vector<std::uint64_t>& e_levels) const {
  if (m > n) throw std::invalid_argument("base_word_plan: need m <= n");
  const Stage& sm = stage(m);
  if (sm.height > BigInt((unsigned long)1 << 30))
    throw std::invalid_argument("base_word_plan: stage-m tower too tall for the seed word");
  SubstitutionPlan plan;
  unsigned long hm = sm.height.get_ui();
  std::vector<bool> in_e(hm, false);
  for (std::uint64_t i : e_levels) {
    if (i >= hm) throw std::out_of_range("E level index");
    in_e[i] = true;
  }
  for (unsigned long i = 0; i < hm; ++i) plan.w0.push_back(in_e[i]);
  for (int s = m + 1; s <= n; ++s) {
    const Stage& st = stage(s);
    plan.rules.push_back({st.k.get_ui(), st.j.get_ui(), 2 * primes_.primes[(std::size_t)s].get_ui()});
  }
  return plan;
}

TailBound RankOneSystem::tail_bound(int n) const {
  if (n < 0 || (std::size_t)n >= stages_.size()) throw std::out_of_range("stage index");
  TailBound tb;
  std::size_t last = stages_.size() - 1;
  if ((std::size_t)n >= last) {
    tb.bounded = false;  // no increment beyond n is computable
    return tb;
  }
  // x_{m+1} - x_m = ell_m (1/3 + j_{m+1} / (3 k_{m+1})), exact over known primes.
  Rational sum = 0, delta_last = 0;
  for (std::size_t m = (std::size_t)n; m < last; ++m) {
    const Stage& next = stages_[m + 1];
    Rational delta = stages_[m].level_len * (Rational(1, 3) + Rational(next.j) / (3 * Rational(next.k)));
    sum += delta;
    delta_last = delta;
  }
  // Remainder for unseen stages: geometric majorant with ratio <= 1/2,
  // so it is at most the last computable increment.
  tb.value = CertifiedValue(Rational(0), sum + delta_last);
  tb.bounded = true;
  return tb;
}

CertifiedValue RankOneSystem::normalizer(int n) const {
  const Stage& st = stage(n);
  TailBound tb = tail_bound(n);
  if (!tb.bounded) return CertifiedValue::point(st.x);  // stage-relative
  return {st.x, st.x + tb.value.hi};
}

}  // namespace gentropy
