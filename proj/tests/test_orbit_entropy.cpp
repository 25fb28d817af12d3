#include <doctest.h>

#include <cmath>

#include "gentropy/orbit_entropy.hpp"

using namespace gentropy;

namespace {
RankOneSystem small_system() {
  return RankOneSystem::build(PrimeSeq::validate({BigInt(2), BigInt(29)}), 1);
}
}  // namespace

TEST_CASE("geometric join sequence on the base system") {
  auto sys = small_system();
  auto E = sys.level_set(0, {0});
  auto joins = join_sequence_geometric(sys, E, 4, 0);
  REQUIRE(joins.size() == 4);

  // n=1: {E, tower \ E}, fully covered
  CHECK(joins[0].atoms.size() == 2);
  CHECK(joins[0].uncovered.is_empty());
  Rational tot = 0;
  for (auto& [lab, s] : joins[0].atoms) tot += s.measure();
  CHECK(tot == 8);

  // n=2 on the 8-level staircase: atoms 10 and 00; top level uncovered mass 1
  CHECK(joins[1].atoms.size() == 2);
  CHECK(joins[1].uncovered.measure() == 1);
  for (auto& [lab, s] : joins[1].atoms) {
    if (lab == "10") CHECK(s.measure() == 1);
    if (lab == "00") CHECK(s.measure() == 6);
  }

  // atom count is bounded by the number of length-n windows
  for (auto& jr : joins) CHECK(jr.atoms.size() <= 8 - jr.n + 1);

  CHECK_THROWS_AS(join_sequence_geometric(sys, E, 8, 0), std::invalid_argument);
}

TEST_CASE("symbolic name measures: window counts and conservation") {
  auto sys = small_system();
  auto names = name_measures_symbolic(sys, 1, 0, {0}, 2);
  const Stage& s1 = sys.stage(1);

  // per-29-period counts in W1 = (10000000 10000000 0 10000000 0000)^58:
  // "10" x3, "01" x3, "00" x23 per period
  std::uint64_t total_windows = 0;
  std::map<std::string, std::uint64_t> counts;
  for (auto& [w, mu] : names.names.entries) {
    // recover the integer count from the exact Lebesgue mass
    Rational leb = mu.lo * names.normalizer.lo;
    Rational c = leb / s1.level_len;
    REQUIRE(c.get_den() == 1);
    counts[w] = c.get_num().get_ui();
    total_windows += counts[w];
  }
  CHECK(total_windows == 1682 - 2 + 1);
  CHECK(counts.at("10") == 3 * 58);
  // one "01" straddles consecutive periods and is lost at the tower top
  CHECK(counts.at("01") == 3 * 58 - 1);
  CHECK(counts.at("00") == 23 * 58);

  // conservation: sum of window masses + (k-1) top levels = x_n (Lebesgue)
  Rational acc = 0;
  for (auto& [w, c] : counts) acc += Rational(c) * s1.level_len;
  CHECK(acc + Rational(2 - 1) * s1.level_len == s1.x);
}

TEST_CASE("symbolic totals form a certified partition of mass") {
  auto sys = small_system();
  for (std::uint64_t k : {1, 2, 5, 8, 16}) {
    auto names = name_measures_symbolic(sys, 1, 0, {0}, k);
    auto total = names.names.total();
    CHECK(total.lo <= 1);
    CHECK(total.hi >= 1);
    // Lemma: no k-window can recur faster than its period allows
    for (auto& [w, mu] : names.names.entries) {
      std::uint64_t per = period(w);
      CHECK(mu.hi <= Rational(1, (unsigned long)per) + names.names.residual.hi);
    }
  }
}

TEST_CASE("k=1 symbolic masses match mu(E)") {
  auto sys = small_system();
  auto names = name_measures_symbolic(sys, 1, 0, {0}, 1);
  // E = level 0 of stage 0, Lebesgue mass 1
  CHECK(names.names.entries.at("1").lo * names.normalizer.lo == 1);
  CHECK(names.names.residual.lo == 0);
}

TEST_CASE("geometric and symbolic methods agree exactly on covered atoms") {
  auto sys = small_system();
  auto E = sys.level_set(0, {0});
  auto joins = join_sequence_geometric(sys, E, 6, 1);  // stage-1 map
  const Stage& s1 = sys.stage(1);
  for (auto& jr : joins) {
    auto names = name_measures_symbolic(sys, 1, 0, {0}, jr.n);
    REQUIRE(jr.atoms.size() == names.names.entries.size());
    for (auto& [lab, s] : jr.atoms) {
      auto it = names.names.entries.find(lab);
      REQUIRE(it != names.names.entries.end());
      // count * ell equals the geometric atom measure, exactly
      Rational leb = it->second.lo * names.normalizer.lo;
      CHECK(s.measure() == leb);
    }
    CHECK(jr.uncovered.measure() == Rational((unsigned long)(jr.n - 1)) * s1.level_len);
  }
}

TEST_CASE("entropy agrees between the two methods") {
  auto sys = small_system();
  auto E = sys.level_set(0, {0});
  auto g = EntropyFunction::eta();
  auto joins = join_sequence_geometric(sys, E, 5, 1);
  for (auto& jr : joins) {
    auto names = name_measures_symbolic(sys, 1, 0, {0}, jr.n);
    auto Hg = entropy_from_join(g, jr, names.normalizer);
    auto Hs = entropy_from_names(g, names);
    // overlapping certified intervals (identical atom masses, different residual models)
    CHECK(Hg.lo <= Hs.hi);
    CHECK(Hs.lo <= Hg.hi);
  }
}

TEST_CASE("choose_stage picks the smallest tall-enough tower") {
  auto sys = RankOneSystem::build(PrimeSeq::validate({BigInt(2), BigInt(29), BigInt(5051)}), 2);
  CHECK(choose_stage(sys, 1) == 0);
  CHECK(choose_stage(sys, 2) == 0);
  CHECK(choose_stage(sys, 3) == 1);    // 4*3 > 8
  CHECK(choose_stage(sys, 420) == 1);  // 1682 >= 1680
  CHECK(choose_stage(sys, 421) == 2);
  CHECK_THROWS_AS(choose_stage(sys, 100000000), std::invalid_argument);
}

TEST_CASE("residual entropy addon") {
  auto g = EntropyFunction::g0(2.0);
  ResidualPart none{CertifiedValue(), BigInt(0)};
  CHECK(residual_entropy_addon(g, none).hi == 0);

  ResidualPart part{CertifiedValue(Rational(0), Rational(1, 100)), BigInt(1) << 16};
  auto a = residual_entropy_addon(g, part);
  CHECK(a.lo == 0);
  CHECK(a.hi > 0);
  // r*g(m/r) with m=1/100, r=2^16: m*phi(2^-t), t = log2(r/m)
  double m = 0.01, t = std::log2(65536.0 / m);
  CHECK(to_double(a.hi) == doctest::Approx(m * g.phi_of_log2(t)).epsilon(1e-9));

  // more atoms -> larger certified addon (phi decreasing in x, increasing in t)
  ResidualPart more{part.mass, BigInt(1) << 32};
  CHECK(residual_entropy_addon(g, more).hi > a.hi);
}

TEST_CASE("mass spectrum entropy matches atomwise evaluation") {
  auto g = EntropyFunction::eta();
  MassSpectrum spec;
  spec.masses.emplace_back(CertifiedValue::point(Rational(1, 4)), BigInt(2));
  spec.masses.emplace_back(CertifiedValue::point(Rational(1, 2)), BigInt(1));
  CHECK(spec.atom_count() == 3);
  auto H = entropy_from_spectrum(g, spec);
  CHECK(H.lo == Rational(3, 2));  // 2*(1/4*2) + 1/2
  CHECK(H.hi == Rational(3, 2));
}

TEST_CASE("subshift complexity") {
  auto full = SubshiftSpec::full_shift(Rational(1, 2));
  CHECK(subshift_complexity(full, 10) == 1024);

  auto golden = SubshiftSpec::sft({"11"});
  CHECK(subshift_complexity(golden, 2) == 3);
  CHECK(subshift_complexity(golden, 3) == 5);
  CHECK(subshift_complexity(golden, 4) == 8);
  CHECK(subshift_complexity(golden, 10) == 144);  // Fibonacci growth

  CHECK(subshift_complexity(SubshiftSpec::sft({"01", "10"}), 5) == 2);
  CHECK_THROWS_AS(SubshiftSpec::sft({"2"}), std::invalid_argument);
}

TEST_CASE("bernoulli cylinder measures") {
  auto full = SubshiftSpec::full_shift(Rational(1, 2));
  for (std::uint64_t n : {1, 5, 40}) {
    auto spec = cylinder_measures(full, n);
    REQUIRE(spec.masses.size() == 1);  // all cylinders share mass 2^-n
    CHECK(spec.masses[0].first.lo == Rational(1, BigInt(1) << n));
    BigInt expect = 1;
    mpz_mul_2exp(expect.get_mpz_t(), expect.get_mpz_t(), n);
    CHECK(spec.masses[0].second == expect);
  }

  auto biased = cylinder_measures(SubshiftSpec::full_shift(Rational(1, 3)), 4);
  Rational tot = 0;
  BigInt atoms = 0;
  for (auto& [mass, mult] : biased.masses) {
    tot += mass.lo * Rational(mult);
    atoms += mult;
  }
  CHECK(tot == 1);
  CHECK(atoms == 16);
}

TEST_CASE("markov validation and cylinder measures") {
  std::vector<std::vector<Rational>> M{{Rational(1, 2), Rational(1, 2)},
                                       {Rational(1), Rational(0)}};
  // stationary for this golden-mean-like chain: (2/3, 1/3)
  auto spec = SubshiftSpec::markov(M, {Rational(2, 3), Rational(1, 3)});
  CHECK(subshift_complexity(spec, 2) == 3);  // "11" has probability 0

  auto cm = cylinder_measures(spec, 3);
  Rational tot = 0;
  BigInt atoms = 0;
  for (auto& [mass, mult] : cm.masses) {
    tot += mass.lo * Rational(mult);
    atoms += mult;
  }
  CHECK(tot == 1);
  CHECK(atoms == subshift_complexity(spec, 3));

  CHECK_THROWS_AS(SubshiftSpec::markov(M, {Rational(1, 2), Rational(1, 2)}),
                  std::invalid_argument);  // not fixed by the matrix
  CHECK_THROWS_AS(SubshiftSpec::markov({{Rational(1, 2), Rational(1, 3)},
                                        {Rational(1), Rational(0)}},
                                       {Rational(2, 3), Rational(1, 3)}),
                  std::invalid_argument);  // rows not stochastic
  CHECK_THROWS_AS(cylinder_measures(SubshiftSpec::sft({"11"}), 3), std::invalid_argument);
}

TEST_CASE("spectrum entropy for bernoulli(1/2) under g0 equals log2(1+n) exactly") {
  auto g0 = EntropyFunction::g0(2.0);
  for (std::uint64_t n : {3, 7, 15}) {  // 1+n a power of two: exact evaluation
    auto spec = cylinder_measures(SubshiftSpec::full_shift(Rational(1, 2)), n);
    auto H = entropy_from_spectrum(g0, spec);
    Rational expect((unsigned long)mpz_sizeinbase(BigInt(n + 1).get_mpz_t(), 2) - 1);
    CHECK(H.lo == expect);
    CHECK(H.hi == expect);
  }
}
