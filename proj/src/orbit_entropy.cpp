#include "gentropy/orbit_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace gentropy {

std::vector<JoinResult> join_sequence_geometric(const RankOneSystem& sys, const IntervalSet& E,
                                                std::uint64_t n_max, int M) {
  const Stage& st = sys.stage(M);
  if (BigInt(n_max) >= st.height)
    throw std::invalid_argument("join_sequence_geometric: n_max must be below the tower height");
  Interval ambient(Rational(0), st.x);
  IntervalSet tower = IntervalSet::single(Rational(0), st.x);
  if (!E.diff(tower).is_empty())
    throw std::invalid_argument("join_sequence_geometric: E must lie inside the tower");
  PiecewiseTranslation T = sys.stage_map(M);

  IntervalSet pre1 = E;                    // T^{-i} E
  IntervalSet pre0 = tower.diff(E);        // T^{-i} (tower \ E)
  std::vector<std::pair<std::string, IntervalSet>> atoms;
  if (!pre1.is_empty()) atoms.emplace_back("1", pre1);
  if (!pre0.is_empty()) atoms.emplace_back("0", pre0);

  std::vector<JoinResult> out;
  auto snapshot = [&](std::uint64_t n) {
    JoinResult jr;
    jr.n = n;
    jr.atoms = atoms;
    IntervalSet covered;
    for (const auto& [lab, s] : jr.atoms) covered = covered.unite(s);
    jr.uncovered = tower.diff(covered);
    out.push_back(std::move(jr));
  };
  snapshot(1);

  for (std::uint64_t i = 1; i < n_max; ++i) {
    pre1 = T.map_set(pre1, MapDirection::Preimage).mapped;
    pre0 = T.map_set(pre0, MapDirection::Preimage).mapped;
    std::vector<std::pair<std::string, IntervalSet>> next;
    next.reserve(atoms.size() * 2);
    for (const auto& [lab, s] : atoms) {
      IntervalSet a0 = s.intersect(pre0);
      IntervalSet a1 = s.intersect(pre1);
      if (!a0.is_empty()) next.emplace_back(lab + "0", std::move(a0));
      if (!a1.is_empty()) next.emplace_back(lab + "1", std::move(a1));
    }
    atoms = std::move(next);
    snapshot(i + 1);
  }
  return out;
}

int choose_stage(const RankOneSystem& sys, std::uint64_t k) {
  for (const auto& st : sys.stages())
    if (st.height >= BigInt(4 * k)) return st.n;
  throw std::invalid_argument("no built stage tall enough for k");
}

SymbolicNames name_measures_symbolic(const RankOneSystem& sys, int n, int m,
                                     const std::vector<std::uint64_t>& e_levels, std::uint64_t k,
                                     int workers) {
  const Stage& st = sys.stage(n);
  if (BigInt(k) > st.height) throw std::invalid_argument("name_measures_symbolic: k too large");
  if (k == 0) throw std::invalid_argument("name_measures_symbolic: k must be positive");

  SubstitutionPlan plan = sys.base_word_plan(n, m, e_levels);
  constexpr std::uint64_t kBitBudget = 1ULL << 30;

  std::map<std::string, std::uint64_t> counts;
  if (!plan.rules.empty()) {
    // W_n is (block)^{2 p_n}; counting over the periodic word needs only the
    // block and one seam, never the full materialization.
    SubstitutionPlan block_plan = plan;
    std::uint64_t reps = block_plan.rules.back().reps;
    block_plan.rules.back().reps = 1;
    BitWord U = block_plan.materialize(kBitBudget);
    if (k <= (reps - 1) * U.size()) {
      counts = factor_multiset_periodic(U, reps, k);
    } else {
      counts = factor_multiset(plan.materialize(kBitBudget), k, workers);
    }
  } else {
    counts = factor_multiset(plan.materialize(kBitBudget), k, workers);
  }

  SymbolicNames out;
  out.level_len = st.level_len;
  out.normalizer = sys.normalizer(n);
  out.stage_relative = sys.normalizer_stage_relative(n);
  out.names.k = k;

  for (const auto& [word, c] : counts) {
    CertifiedValue leb = CertifiedValue::point(Rational((unsigned long)c) * st.level_len);
    out.names.entries.emplace(word, leb / out.normalizer);
  }

  Rational tower_leb = Rational((unsigned long)(k - 1)) * st.level_len;
  out.tower.mass = CertifiedValue(Rational(0), tower_leb / out.normalizer.lo);
  out.tower.atoms = k > 1 ? BigInt(k - 1) : BigInt(0);

  TailBound tb = sys.tail_bound(n);
  Rational tail_leb = tb.bounded ? tb.value.hi : Rational(0);
  out.tail.mass = CertifiedValue(Rational(0), tail_leb / out.normalizer.lo);
  BigInt two_k = 1;
  mpz_mul_2exp(two_k.get_mpz_t(), two_k.get_mpz_t(), k);
  out.tail.atoms = tail_leb == 0 ? BigInt(0) : two_k;

  out.names.residual = out.tower.mass + out.tail.mass;
  return out;
}

CertifiedValue residual_entropy_addon(const EntropyFunction& g, const ResidualPart& part) {
  if (part.mass.hi <= 0 || part.atoms <= 0) return {};
  double m = to_double_up(part.mass.hi);
  long exp2;
  double mant = mpz_get_d_2exp(&exp2, part.atoms.get_mpz_t());
  double log2r = std::log2(mant) + (double)exp2;
  double t = log2r - std::log2(m);  // log2(r/m)
  if (t < 0) t = 0;
  // r*g(m/r) = m*phi(2^{-t}); phi decreasing makes r = atom budget worst-case.
  double phi = g.phi_of_log2(t);
  double upper = m * phi * (1 + 1e-12) + 1e-300;
  return {Rational(0), rational_from_double(upper)};
}

CertifiedValue entropy_from_names(const EntropyFunction& g, const SymbolicNames& src) {
  CertifiedValue H;
  for (const auto& [word, mu] : src.names.entries) H += g.eval_interval(mu);
  H += residual_entropy_addon(g, src.tower);
  H += residual_entropy_addon(g, src.tail);
  return H;
}

CertifiedValue entropy_from_join(const EntropyFunction& g, const JoinResult& jr,
                                 const CertifiedValue& normalizer) {
  CertifiedValue H;
  for (const auto& [lab, s] : jr.atoms)
    H += g.eval_interval(CertifiedValue::point(s.measure()) / normalizer);
  if (!jr.uncovered.is_empty()) {
    ResidualPart part;
    part.mass = CertifiedValue(Rational(0), jr.uncovered.measure() / normalizer.lo);
    part.atoms = jr.n > 1 ? BigInt(jr.n - 1) : BigInt(1);
    H += residual_entropy_addon(g, part);
  }
  return H;
}

BigInt MassSpectrum::atom_count() const {
  BigInt c = 0;
  for (const auto& [mass, mult] : masses) c += mult;
  return c;
}

CertifiedValue entropy_from_spectrum(const EntropyFunction& g, const MassSpectrum& spec) {
  CertifiedValue H;
  for (const auto& [mass, mult] : spec.masses) H += Rational(mult) * g.eval_interval(mass);
  return H;
}

SubshiftSpec SubshiftSpec::full_shift(const Rational& p) {
  if (p <= 0 || p >= 1) throw std::invalid_argument("full_shift: p in (0,1)");
  SubshiftSpec s;
  s.kind = SubshiftKind::FullShift;
  s.bernoulli_p = p;
  return s;
}

SubshiftSpec SubshiftSpec::sft(std::vector<std::string> forbidden) {
  SubshiftSpec s;
  s.kind = SubshiftKind::SFT;
  for (const auto& w : forbidden)
    if (w.empty() || w.find_first_not_of("01") != std::string::npos)
      throw std::invalid_argument("sft: forbidden words must be nonempty 01-words");
  s.forbidden = std::move(forbidden);
  return s;
}

SubshiftSpec SubshiftSpec::markov(std::vector<std::vector<Rational>> matrix,
                                  std::vector<Rational> stationary) {
  if (matrix.size() != 2 || matrix[0].size() != 2 || matrix[1].size() != 2 ||
      stationary.size() != 2)
    throw std::invalid_argument("markov: need a 2x2 matrix and 2-entry stationary vector");
  for (int i = 0; i < 2; ++i) {
    if (matrix[i][0] + matrix[i][1] != 1 || matrix[i][0] < 0 || matrix[i][1] < 0)
      throw std::invalid_argument("markov: rows must be stochastic");
  }
  if (stationary[0] + stationary[1] != 1 || stationary[0] < 0 || stationary[1] < 0)
    throw std::invalid_argument("markov: stationary vector must be a distribution");
  for (int jcol = 0; jcol < 2; ++jcol) {
    Rational fixed = stationary[0] * matrix[0][jcol] + stationary[1] * matrix[1][jcol];
    if (fixed != stationary[jcol])
      throw std::invalid_argument("markov: vector is not fixed by the matrix");
  }
  SubshiftSpec s;
  s.kind = SubshiftKind::Markov;
  s.matrix = std::move(matrix);
  s.stationary = std::move(stationary);
  return s;
}

namespace {

bool admissible(const std::string& w, const std::vector<std::string>& forbidden) {
  for (const auto& f : forbidden)
    if (w.find(f) != std::string::npos) return false;
  return true;
}

BigInt sft_complexity(const std::vector<std::string>& forbidden, std::uint64_t n) {
  std::size_t maxlen = 1;
  for (const auto& f : forbidden) maxlen = std::max(maxlen, f.size());
  std::uint64_t sl = maxlen - 1;  // DP state: admissible suffix of this length
  if (n <= sl || sl == 0) {
    // Short horizon: enumerate directly.
    BigInt count = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
      std::string w(n, '0');
      for (std::uint64_t i = 0; i < n; ++i)
        if ((mask >> i) & 1) w[i] = '1';
      if (admissible(w, forbidden)) ++count;
    }
    return count;
  }
  std::map<std::string, BigInt> state;
  for (std::uint64_t mask = 0; mask < (1ULL << sl); ++mask) {
    std::string w(sl, '0');
    for (std::uint64_t i = 0; i < sl; ++i)
      if ((mask >> i) & 1) w[i] = '1';
    if (admissible(w, forbidden)) state[w] = 1;
  }
  for (std::uint64_t step = sl; step < n; ++step) {
    std::map<std::string, BigInt> next;
    for (const auto& [w, c] : state) {
      for (char b : {'0', '1'}) {
        std::string ext = w + b;
        bool ok = true;
        for (const auto& f : forbidden)
          if (ext.size() >= f.size() && ext.compare(ext.size() - f.size(), f.size(), f) == 0) {
            ok = false;
            break;
          }
        if (ok) next[ext.substr(1)] += c;
      }
    }
    state = std::move(next);
  }
  BigInt total = 0;
  for (const auto& [w, c] : state) total += c;
  return total;
}

}  // namespace

BigInt subshift_complexity(const SubshiftSpec& spec, std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("subshift_complexity: n >= 1");
  switch (spec.kind) {
    case SubshiftKind::FullShift: {
      BigInt r = 1;
      mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), n);
      return r;
    }
    case SubshiftKind::SFT:
      return sft_complexity(spec.forbidden, n);
    case SubshiftKind::Markov: {
      // Words of positive measure: forbid zero-probability transitions.
      std::vector<std::string> forbidden;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          if (spec.matrix[i][j] == 0) forbidden.push_back({char('0' + i), char('0' + j)});
      if (n == 1) {
        BigInt c = 0;
        for (int i = 0; i < 2; ++i)
          if (spec.stationary[i] > 0) ++c;
        return c;
      }
      return forbidden.empty() ? subshift_complexity(SubshiftSpec::full_shift(Rational(1, 2)), n)
                               : sft_complexity(forbidden, n);
    }
  }
  return 0;
}

MassSpectrum cylinder_measures(const SubshiftSpec& spec, std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("cylinder_measures: n >= 1");
  MassSpectrum out;
  switch (spec.kind) {
    case SubshiftKind::FullShift: {
      const Rational& p = spec.bernoulli_p;
      Rational q = 1 - p;
      // mass p^i q^(n-i) occurs C(n,i) times; coinciding masses merge.
      std::map<Rational, BigInt> agg;
      Rational pi = 1;
      for (std::uint64_t i = 0; i <= n; ++i) {
        Rational mass = pi;
        for (std::uint64_t r = 0; r < n - i; ++r) mass *= q;
        BigInt binom;
        mpz_bin_uiui(binom.get_mpz_t(), n, i);
        agg[mass] += binom;
        pi *= p;
      }
      for (auto& [mass, mult] : agg) out.masses.emplace_back(CertifiedValue::point(mass), mult);
      return out;
    }
    case SubshiftKind::Markov: {
      // Aggregate by (last symbol, mass); distinct masses stay polynomial in n.
      std::map<Rational, BigInt> bySym[2];
      for (int s = 0; s < 2; ++s)
        if (spec.stationary[s] > 0) bySym[s][spec.stationary[s]] = 1;
      for (std::uint64_t step = 1; step < n; ++step) {
        std::map<Rational, BigInt> next[2];
        for (int s = 0; s < 2; ++s)
          for (const auto& [mass, mult] : bySym[s])
            for (int t = 0; t < 2; ++t)
              if (spec.matrix[s][t] > 0) next[t][mass * spec.matrix[s][t]] += mult;
        bySym[0] = std::move(next[0]);
        bySym[1] = std::move(next[1]);
      }
      std::map<Rational, BigInt> agg;
      for (int s = 0; s < 2; ++s)
        for (const auto& [mass, mult] : bySym[s]) agg[mass] += mult;
      for (auto& [mass, mult] : agg) out.masses.emplace_back(CertifiedValue::point(mass), mult);
      return out;
    }
    case SubshiftKind::SFT:
      throw std::invalid_argument("cylinder_measures: SFT carries no canonical measure");
  }
  return out;
}

}  // namespace gentropy
