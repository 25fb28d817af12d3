#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gentropy/rational.hpp"

namespace gentropy {

// Bit-packed 01-word.
class BitWord {
 public:
  BitWord() = default;
  static BitWord from_string(const std::string& s);  // '0'/'1' characters

  void push_back(bool bit);
  void append(const BitWord& w);
  void append_zeros(std::uint64_t count);
  void append_repeat(const BitWord& w, std::uint64_t times);

  bool operator[](std::uint64_t i) const {
    return (bits_[i >> 6] >> (i & 63)) & 1;
  }
  std::uint64_t size() const { return n_; }
  std::uint64_t popcount() const;
  std::string to_string() const;
  std::string substr(std::uint64_t pos, std::uint64_t len) const;

 private:
  std::vector<std::uint64_t> bits_;
  std::uint64_t n_ = 0;
};

// Minimal k >= 1 with s_i = s_{i+k} on the overlap; |s| when none.
// Border/failure-function algorithm, O(n).
std::uint64_t period(const BitWord& s);
std::uint64_t period(const std::string& s);

// Occurrence counts of all length-k factors of W. Chunked across `workers`
// threads; the merged result is independent of the thread count.
std::map<std::string, std::uint64_t> factor_multiset(const BitWord& W, std::uint64_t k,
                                                     int workers = 1);

// Same for the periodic word U^reps without materializing it: windows at
// positions sharing a residue mod |U| are identical, so only |U| distinct
// windows need inspection. Requires k <= (reps-1)*|U|.
std::map<std::string, std::uint64_t> factor_multiset_periodic(const BitWord& U, std::uint64_t reps,
                                                              std::uint64_t k);

// Staged substitution W_n = ((W_{n-1} W_{n-1} 0 W_{n-1})^k 0^j)^reps.
struct SubstitutionPlan {
  BitWord w0;
  struct Rule {
    std::uint64_t k;
    std::uint64_t j;
    std::uint64_t reps;  // 2 p_n
  };
  std::vector<Rule> rules;

  BigInt length() const;  // |W_n| without materializing
  // Throws std::length_error when the result exceeds max_bits.
  BitWord materialize(std::uint64_t max_bits) const;
  // Word after applying only the first `stages` rules.
  BitWord materialize_prefix(std::size_t stages, std::uint64_t max_bits) const;
};

// Measures of cylinder names: word -> certified normalized measure.
struct NameMultiset {
  std::uint64_t k = 0;  // common word length
  std::map<std::string, CertifiedValue> entries;
  CertifiedValue residual;  // unresolved mass (top-of-tower windows, tail)

  CertifiedValue total() const;  // sum of entries + residual
  // Mass of entries whose word period lies in [p,q]; residual inflates only
  // the upper bound.
  CertifiedValue period_range_measure(std::uint64_t p, std::uint64_t q) const;
};

}  // namespace gentropy
