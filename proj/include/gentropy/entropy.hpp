#pragma once

#include "gentropy/entropy_functions.hpp"
#include "gentropy/interval_set.hpp"

namespace gentropy {

// H(g,P) = sum over atoms of g(mu(A)/normalizer), outward-rounded over the
// normalizer interval. normalizer.lo must be positive.
CertifiedValue static_entropy(const EntropyFunction& g, const LabeledPartition& P,
                              const CertifiedValue& normalizer);

// H_F(g,P) = sum of g(mu(A ∩ F)/normalizer).
CertifiedValue restricted_entropy(const EntropyFunction& g, const LabeledPartition& P,
                                  const IntervalSet& F, const CertifiedValue& normalizer);

// g applied to a single certified mass, normalized.
CertifiedValue entropy_term(const EntropyFunction& g, const CertifiedValue& mass,
                            const CertifiedValue& normalizer);

}  // namespace gentropy
