#include <doctest.h>

#include <random>
#include <string>

#include "gentropy/words.hpp"

using namespace gentropy;

namespace {

std::uint64_t period_brute(const std::string& s) {
  for (std::uint64_t k = 1; k < s.size(); ++k) {
    bool ok = true;
    for (std::uint64_t i = 0; i + k < s.size(); ++i)
      if (s[i] != s[i + k]) { ok = false; break; }
    if (ok) return k;
  }
  return s.size();
}

std::map<std::string, std::uint64_t> factors_brute(const std::string& w, std::uint64_t k) {
  std::map<std::string, std::uint64_t> out;
  for (std::uint64_t i = 0; i + k <= w.size(); ++i) ++out[w.substr(i, k)];
  return out;
}

std::string random_word(std::mt19937_64& rng, std::uint64_t max_len) {
  std::uint64_t n = 1 + rng() % max_len;
  std::string s(n, '0');
  // biased coin makes long borders more likely
  for (auto& c : s) c = (rng() % 3) ? '0' : '1';
  return s;
}

}  // namespace

TEST_CASE("bitword basics") {
  auto w = BitWord::from_string("10110");
  CHECK(w.size() == 5);
  CHECK(w.popcount() == 3);
  CHECK(w.to_string() == "10110");
  CHECK(w.substr(1, 3) == "011");
  CHECK(w[0]);
  CHECK(!w[1]);

  BitWord v;
  v.append(w);
  v.append_zeros(3);
  v.append_repeat(BitWord::from_string("01"), 2);
  CHECK(v.to_string() == "101100000101");

  // crossing the 64-bit chunk boundary
  BitWord big;
  for (int i = 0; i < 200; ++i) big.push_back(i % 3 == 0);
  for (int i = 0; i < 200; ++i) CHECK(big[i] == (i % 3 == 0));
}

TEST_CASE("period examples") {
  CHECK(period(std::string("0101")) == 2);
  CHECK(period(std::string("0000")) == 1);
  CHECK(period(std::string("0011")) == 4);
  CHECK(period(std::string("1")) == 1);
  CHECK(period(std::string("10000000")) == 8);
  CHECK(period(BitWord::from_string("0101")) == 2);
}

TEST_CASE("period agrees with brute force on random words") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 10000; ++i) {
    std::string s = random_word(rng, 200);
    CHECK(period(s) == period_brute(s));
    CHECK(period(BitWord::from_string(s)) == period_brute(s));
  }
}

TEST_CASE("factor multiset examples") {
  // W0 W0 with W0 = 10000000
  auto w = BitWord::from_string("1000000010000000");
  auto m = factor_multiset(w, 2);
  CHECK(m.size() == 3);
  CHECK(m.at("10") == 2);
  CHECK(m.at("00") == 12);
  CHECK(m.at("01") == 1);

  auto m1 = factor_multiset(w, 1);
  CHECK(m1.at("1") == 2);
  CHECK(m1.at("0") == 14);
}

TEST_CASE("factor counts conserve window count and ignore worker count") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 50; ++i) {
    auto s = random_word(rng, 3000);
    auto w = BitWord::from_string(s);
    std::uint64_t k = 1 + rng() % 12;
    if (k > w.size()) k = w.size();
    auto ref = factors_brute(s, k);
    for (int workers : {1, 2, 4, 7}) {
      auto got = factor_multiset(w, k, workers);
      CHECK(got == ref);
    }
    std::uint64_t total = 0;
    for (auto& [f, c] : ref) total += c;
    CHECK(total == w.size() - k + 1);
  }
}

TEST_CASE("periodic factor counting matches direct counting") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 200; ++i) {
    auto u = random_word(rng, 40);
    std::uint64_t reps = 2 + rng() % 6;
    std::uint64_t k = 1 + rng() % (u.size() * (reps - 1));
    BitWord U = BitWord::from_string(u);
    BitWord W;
    W.append_repeat(U, reps);
    CHECK(factor_multiset_periodic(U, reps, k) == factor_multiset(W, k));
  }
  CHECK_THROWS_AS(factor_multiset_periodic(BitWord::from_string("01"), 2, 3),
                  std::invalid_argument);
}

TEST_CASE("substitution plan lengths and materialization") {
  SubstitutionPlan plan;
  plan.w0 = BitWord::from_string("10000000");
  plan.rules.push_back({1, 4, 58});  // ((W0 W0 0 W0)^1 0^4)^58
  CHECK(plan.length() == 1682);

  BitWord w1 = plan.materialize(1 << 20);
  CHECK(w1.size() == 1682);
  // build the same word by hand
  BitWord unit;
  unit.append(plan.w0);
  unit.append(plan.w0);
  unit.push_back(false);
  unit.append(plan.w0);
  unit.append_zeros(4);
  BitWord ref;
  ref.append_repeat(unit, 58);
  CHECK(w1.to_string() == ref.to_string());
  CHECK(w1.popcount() == 174);  // 3 ones per W0-triple * 58

  // prefix materialization stops early
  CHECK(plan.materialize_prefix(0, 1 << 20).to_string() == "10000000");
  CHECK_THROWS_AS(plan.materialize(100), std::length_error);
}

TEST_CASE("two-rule plan length identity") {
  SubstitutionPlan plan;
  plan.w0 = BitWord::from_string("10000000");
  plan.rules.push_back({1, 4, 58});
  plan.rules.push_back({1, 4, 10102});  // toy second stage with p=5051
  // |W2| = ((3*1682+1)*1 + 4) * 10102
  CHECK(plan.length() == BigInt(3 * 1682 + 1 + 4) * 10102);
  BitWord w2 = plan.materialize(1 << 26);
  CHECK(BigInt((unsigned long)w2.size()) == plan.length());
}

TEST_CASE("name multiset totals and period ranges") {
  NameMultiset names;
  names.k = 4;
  names.entries["0101"] = CertifiedValue::point(Rational(1, 4));   // period 2
  names.entries["0000"] = CertifiedValue::point(Rational(1, 2));   // period 1
  names.entries["0011"] = CertifiedValue::point(Rational(1, 8));   // period 4
  names.residual = CertifiedValue(Rational(0), Rational(1, 8));

  CHECK(names.total().lo == Rational(7, 8));
  CHECK(names.total().hi == Rational(1));

  auto low = names.period_range_measure(1, 2);
  CHECK(low.lo == Rational(3, 4));
  CHECK(low.hi == Rational(7, 8));  // residual only inflates the upper bound

  auto all = names.period_range_measure(1, 4);
  CHECK(all.lo == Rational(7, 8));
  CHECK(all.hi == Rational(1));

  CHECK_THROWS_AS(names.period_range_measure(3, 2), std::invalid_argument);
}
