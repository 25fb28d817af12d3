#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gentropy/entropy.hpp"
#include "gentropy/rank_one.hpp"
#include "gentropy/words.hpp"

namespace gentropy {

// One refinement level of the geometric join: exact atoms plus the mass whose
// orbit segment leaves the defined part of the stage map.
struct JoinResult {
  std::uint64_t n = 0;
  std::vector<std::pair<std::string, IntervalSet>> atoms;  // 01-name -> set
  IntervalSet uncovered;
};

// P_1 .. P_{n_max} for P = {E, tower \ E} under stage_map(M).
std::vector<JoinResult> join_sequence_geometric(const RankOneSystem& sys, const IntervalSet& E,
                                                std::uint64_t n_max, int M);

// Unresolved mass together with the largest number of distinct atoms it can
// hide in; drives the certified upper entropy bound.
struct ResidualPart {
  CertifiedValue mass;  // normalized
  BigInt atoms;
};

struct SymbolicNames {
  NameMultiset names;         // normalized certified measures
  ResidualPart tower;         // top-of-tower windows: at most k-1 atoms
  ResidualPart tail;          // off-tower mass: at most 2^k atoms
  CertifiedValue normalizer;  // Lebesgue measure of the space used
  bool stage_relative = false;
  Rational level_len;         // ell of the counting stage
};

// Measures of P_k^E atoms from factor counts of the stage-n base word.
// E is the union of the given stage-m levels. `workers` controls counting
// parallelism; results are worker-count independent.
SymbolicNames name_measures_symbolic(const RankOneSystem& sys, int n, int m,
                                     const std::vector<std::uint64_t>& e_levels, std::uint64_t k,
                                     int workers = 1);

// Smallest stage M with height >= 4k (residual stays below a quarter level band).
int choose_stage(const RankOneSystem& sys, std::uint64_t k);

// Worst-case entropy contribution of unresolved mass: concavity puts it at an
// even split over the atom budget, r*g(m/r), increasing in r.
CertifiedValue residual_entropy_addon(const EntropyFunction& g, const ResidualPart& part);

struct EntropySeriesEntry {
  std::uint64_t n = 0;
  CertifiedValue H;
  CertifiedValue residual_mass;
  Rational max_atom_upper = 0;  // diagnostic for the vanishing-atom class
};

struct EntropySeries {
  std::vector<EntropySeriesEntry> entries;
  std::string system, e_descriptor, g_descriptor, method, residual_policy;
  int stage = 0;
};

CertifiedValue entropy_from_names(const EntropyFunction& g, const SymbolicNames& src);
CertifiedValue entropy_from_join(const EntropyFunction& g, const JoinResult& jr,
                                 const CertifiedValue& normalizer);

// Cylinder masses aggregated as (mass, multiplicity); avoids enumerating 2^n atoms.
struct MassSpectrum {
  std::vector<std::pair<CertifiedValue, BigInt>> masses;
  BigInt atom_count() const;
};

CertifiedValue entropy_from_spectrum(const EntropyFunction& g, const MassSpectrum& spec);

enum class SubshiftKind { FullShift, SFT, Markov };

struct SubshiftSpec {
  SubshiftKind kind = SubshiftKind::FullShift;
  Rational bernoulli_p = Rational(1, 2);          // FullShift
  std::vector<std::string> forbidden;             // SFT
  std::vector<std::vector<Rational>> matrix;      // Markov, 2x2 row-stochastic
  std::vector<Rational> stationary;               // Markov, fixed by the matrix

  static SubshiftSpec full_shift(const Rational& p);
  static SubshiftSpec sft(std::vector<std::string> forbidden);
  static SubshiftSpec markov(std::vector<std::vector<Rational>> matrix,
                             std::vector<Rational> stationary);
};

BigInt subshift_complexity(const SubshiftSpec& spec, std::uint64_t n);
MassSpectrum cylinder_measures(const SubshiftSpec& spec, std::uint64_t n);

}  // namespace gentropy
