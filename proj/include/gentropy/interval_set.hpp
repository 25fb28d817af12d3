#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gentropy/rational.hpp"

namespace gentropy {

// Half-open interval [a, b), a < b.
struct Interval {
  Rational a;
  Rational b;

  Interval(Rational lo, Rational hi);
  Rational length() const { return b - a; }
};

// Canonical finite union of half-open intervals: sorted, disjoint, merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  static IntervalSet canonicalize(std::vector<Interval> raw);
  static IntervalSet single(const Rational& a, const Rational& b);
  static IntervalSet empty() { return {}; }

  const std::vector<Interval>& intervals() const { return ivs_; }
  bool is_empty() const { return ivs_.empty(); }
  Rational measure() const;
  bool contains_point(const Rational& x) const;

  IntervalSet unite(const IntervalSet& o) const;
  IntervalSet intersect(const IntervalSet& o) const;
  IntervalSet diff(const IntervalSet& o) const;
  IntervalSet complement(const Interval& ambient) const;  // requires *this ⊆ ambient

  IntervalSet translate(const Rational& offset) const;

  bool operator==(const IntervalSet& o) const;

 private:
  std::vector<Interval> ivs_;  // canonical
};

// Finite measurable partition of the ambient interval with string labels.
struct LabeledPartition {
  Interval ambient;
  std::vector<std::pair<std::string, IntervalSet>> atoms;

  LabeledPartition(Interval amb, std::vector<std::pair<std::string, IntervalSet>> a);
  // Validates disjointness (pairwise intersections empty) and exact cover.
  void validate() const;
};

// Common refinement; labels concatenated "p|q". Empty intersections dropped.
LabeledPartition join(const LabeledPartition& P, const LabeledPartition& Q);

enum class MapDirection { Image, Preimage };

struct MapResult {
  IntervalSet mapped;
  IntervalSet uncovered;  // part of S outside domain (Image) / range (Preimage)
};

// Measure-preserving piecewise translation: finitely many source intervals,
// each shifted by its own offset; sources disjoint, images disjoint.
class PiecewiseTranslation {
 public:
  struct Piece {
    Interval source;
    Rational offset;
  };

  PiecewiseTranslation() = default;
  explicit PiecewiseTranslation(std::vector<Piece> pieces);  // validates disjointness

  const std::vector<Piece>& pieces() const { return pieces_; }
  IntervalSet domain() const;
  IntervalSet range() const;
  Rational total_length() const;

  MapResult map_set(const IntervalSet& S, MapDirection dir) const;

  // True when o's action agrees with ours on our whole domain.
  bool extended_by(const PiecewiseTranslation& o) const;

 private:
  std::vector<Piece> pieces_;  // sorted by source start
};

}  // namespace gentropy
