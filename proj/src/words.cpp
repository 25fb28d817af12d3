#include "gentropy/words.hpp"

#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace gentropy {

BitWord BitWord::from_string(const std::string& s) {
  BitWord w;
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("BitWord: expected 0/1");
    w.push_back(c == '1');
  }
  return w;
}

void BitWord::push_back(bool bit) {
  if ((n_ & 63) == 0) bits_.push_back(0);
  if (bit) bits_.back() |= 1ULL << (n_ & 63);
  ++n_;
}

void BitWord::append(const BitWord& w) {
  for (std::uint64_t i = 0; i < w.n_; ++i) push_back(w[i]);
}

void BitWord::append_zeros(std::uint64_t count) {
  std::uint64_t target = n_ + count;
  bits_.resize((target + 63) / 64, 0);
  n_ = target;
}

void BitWord::append_repeat(const BitWord& w, std::uint64_t times) {
  for (std::uint64_t t = 0; t < times; ++t) append(w);
}

std::uint64_t BitWord::popcount() const {
  std::uint64_t c = 0;
  for (std::uint64_t word : bits_) c += (std::uint64_t)__builtin_popcountll(word);
  return c;
}

std::string BitWord::to_string() const { return substr(0, n_); }

std::string BitWord::substr(std::uint64_t pos, std::uint64_t len) const {
  if (pos + len > n_) throw std::out_of_range("BitWord::substr");
  std::string s(len, '0');
  for (std::uint64_t i = 0; i < len; ++i)
    if ((*this)[pos + i]) s[i] = '1';
  return s;
}

namespace {

template <class Word>
std::uint64_t period_impl(const Word& s, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("period: empty word");
  std::vector<std::uint64_t> pi(n, 0);
  for (std::uint64_t i = 1; i < n; ++i) {
    std::uint64_t j = pi[i - 1];
    while (j > 0 && s[i] != s[j]) j = pi[j - 1];
    if (s[i] == s[j]) ++j;
    pi[i] = j;
  }
  return n - pi[n - 1];
}

}  // namespace

std::uint64_t period(const BitWord& s) { return period_impl(s, s.size()); }
std::uint64_t period(const std::string& s) { return period_impl(s, s.size()); }

std::map<std::string, std::uint64_t> factor_multiset(const BitWord& W, std::uint64_t k,
                                                     int workers) {
  if (k == 0 || k > W.size()) throw std::invalid_argument("factor_multiset: need 1 <= k <= |W|");
  std::uint64_t windows = W.size() - k + 1;
  if (workers < 1) workers = 1;
  if ((std::uint64_t)workers > windows) workers = (int)windows;

  std::vector<std::unordered_map<std::string, std::uint64_t>> partial(workers);
  auto count_range = [&](int t, std::uint64_t lo, std::uint64_t hi) {
    auto& m = partial[t];
    std::string win = W.substr(lo, k);
    m[win] = 1;
    for (std::uint64_t p = lo + 1; p < hi; ++p) {
      win.erase(win.begin());
      win.push_back(W[p + k - 1] ? '1' : '0');
      ++m[win];
    }
  };
  if (workers == 1) {
    count_range(0, 0, windows);
  } else {
    std::vector<std::thread> ts;
    std::uint64_t per = windows / workers;
    for (int t = 0; t < workers; ++t) {
      std::uint64_t lo = t * per;
      std::uint64_t hi = t + 1 == workers ? windows : lo + per;
      ts.emplace_back(count_range, t, lo, hi);
    }
    for (auto& th : ts) th.join();
  }
  // Sorted merge makes the result independent of chunking.
  std::map<std::string, std::uint64_t> out;
  for (auto& m : partial)
    for (auto& [w, c] : m) out[w] += c;
  return out;
}

std::map<std::string, std::uint64_t> factor_multiset_periodic(const BitWord& U, std::uint64_t reps,
                                                              std::uint64_t k) {
  std::uint64_t P = U.size();
  if (P == 0 || reps == 0) throw std::invalid_argument("factor_multiset_periodic: empty word");
  if (k == 0 || k > (reps - 1) * P)
    throw std::invalid_argument("factor_multiset_periodic: need 1 <= k <= (reps-1)|U|");
  std::uint64_t L = P * reps;
  // Window content at position p depends only on p mod P; the window starting
  // at residue r occurs floor((L-k-r)/P)+1 times.
  BitWord UU;  // enough copies of U to read any window of length k from offset < P
  std::uint64_t copies = (k + P - 1) / P + 1;
  UU.append_repeat(U, copies);
  std::map<std::string, std::uint64_t> out;
  std::string win = UU.substr(0, k);
  for (std::uint64_t r = 0; r < P; ++r) {
    if (r > 0) {
      win.erase(win.begin());
      win.push_back(UU[r + k - 1] ? '1' : '0');
    }
    if (r > L - k) break;  // cannot happen when reps >= 2, kept for safety
    out[win] += (L - k - r) / P + 1;
  }
  return out;
}

BigInt SubstitutionPlan::length() const {
  BigInt len(w0.size());
  for (const auto& r : rules) len = ((len * 3 + 1) * r.k + r.j) * r.reps;
  return len;
}

BitWord SubstitutionPlan::materialize_prefix(std::size_t stages, std::uint64_t max_bits) const {
  if (stages > rules.size()) throw std::invalid_argument("materialize_prefix: too many stages");
  BigInt len(w0.size());
  for (std::size_t i = 0; i < stages; ++i)
    len = ((len * 3 + 1) * rules[i].k + rules[i].j) * rules[i].reps;
  if (len > BigInt(max_bits)) throw std::length_error("substitution exceeds memory budget");
  BitWord w = w0;
  for (std::size_t i = 0; i < stages; ++i) {
    const auto& r = rules[i];
    BitWord block;
    for (std::uint64_t c = 0; c < r.k; ++c) {
      block.append(w);
      block.append(w);
      block.push_back(false);
      block.append(w);
    }
    block.append_zeros(r.j);
    BitWord next;
    next.append_repeat(block, r.reps);
    w = std::move(next);
  }
  return w;
}

BitWord SubstitutionPlan::materialize(std::uint64_t max_bits) const {
  return materialize_prefix(rules.size(), max_bits);
}

CertifiedValue NameMultiset::total() const {
  CertifiedValue t = residual;
  for (const auto& [w, m] : entries) t += m;
  return t;
}

CertifiedValue NameMultiset::period_range_measure(std::uint64_t p, std::uint64_t q) const {
  if (p < 1 || p > q) throw std::invalid_argument("period_range_measure: need 1 <= p <= q");
  CertifiedValue acc;
  for (const auto& [w, m] : entries) {
    std::uint64_t per = period(w);
    if (p <= per && per <= q) acc += m;
  }
  // Unresolved mass might lie in the range; it only raises the upper bound.
  return {acc.lo, acc.hi + residual.hi};
}

}  // namespace gentropy
