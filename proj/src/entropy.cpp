#include "gentropy/entropy.hpp"

namespace gentropy {

CertifiedValue entropy_term(const EntropyFunction& g, const CertifiedValue& mass,
                            const CertifiedValue& normalizer) {
  if (normalizer.lo <= 0) throw std::invalid_argument("entropy: normalizer must be positive");
  CertifiedValue x = mass / normalizer;
  // The quotient may exceed 1 by certification slack; g lives on [0,1].
  x = {std::max(Rational(0), std::min(x.lo, Rational(1))),
       std::max(Rational(0), std::min(x.hi, Rational(1)))};
  return g.eval_interval(x);
}

CertifiedValue static_entropy(const EntropyFunction& g, const LabeledPartition& P,
                              const CertifiedValue& normalizer) {
  CertifiedValue H;
  for (const auto& [label, set] : P.atoms)
    H += entropy_term(g, CertifiedValue::point(set.measure()), normalizer);
  return H;
}

CertifiedValue restricted_entropy(const EntropyFunction& g, const LabeledPartition& P,
                                  const IntervalSet& F, const CertifiedValue& normalizer) {
  CertifiedValue H;
  for (const auto& [label, set] : P.atoms)
    H += entropy_term(g, CertifiedValue::point(set.intersect(F).measure()), normalizer);
  return H;
}

}  // namespace gentropy
