#include "gentropy/interval_set.hpp"

#include <algorithm>

namespace gentropy {

Interval::Interval(Rational lo, Rational hi) : a(std::move(lo)), b(std::move(hi)) {
  if (a >= b) throw std::invalid_argument("Interval: need a < b");
}

IntervalSet IntervalSet::canonicalize(std::vector<Interval> raw) {
  std::sort(raw.begin(), raw.end(), [](const Interval& x, const Interval& y) { return x.a < y.a; });
  IntervalSet out;
  for (auto& iv : raw) {
    if (!out.ivs_.empty() && iv.a <= out.ivs_.back().b) {
      if (iv.b > out.ivs_.back().b) out.ivs_.back().b = iv.b;
    } else {
      out.ivs_.push_back(iv);
    }
  }
  return out;
}

IntervalSet IntervalSet::single(const Rational& a, const Rational& b) {
  IntervalSet out;
  out.ivs_.emplace_back(a, b);
  return out;
}

Rational IntervalSet::measure() const {
  Rational m = 0;
  for (const auto& iv : ivs_) m += iv.length();
  return m;
}

bool IntervalSet::contains_point(const Rational& x) const {
  for (const auto& iv : ivs_) {
    if (x < iv.a) return false;
    if (x < iv.b) return true;
  }
  return false;
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
  std::vector<Interval> all = ivs_;
  all.insert(all.end(), o.ivs_.begin(), o.ivs_.end());
  return canonicalize(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
  std::vector<Interval> out;
  size_t i = 0, j = 0;
  while (i < ivs_.size() && j < o.ivs_.size()) {
    const Interval& x = ivs_[i];
    const Interval& y = o.ivs_[j];
    Rational lo = std::max(x.a, y.a), hi = std::min(x.b, y.b);
    if (lo < hi) out.emplace_back(lo, hi);
    if (x.b <= y.b)
      ++i;
    else
      ++j;
  }
  IntervalSet res;
  res.ivs_ = std::move(out);  // already sorted, disjoint, gap-separated
  return res;
}

IntervalSet IntervalSet::diff(const IntervalSet& o) const {
  std::vector<Interval> out;
  for (const auto& iv : ivs_) {
    Rational cur = iv.a;
    for (const auto& cut : o.ivs_) {
      if (cut.b <= cur) continue;
      if (cut.a >= iv.b) break;
      if (cut.a > cur) out.emplace_back(cur, std::min(cut.a, iv.b));
      cur = std::max(cur, cut.b);
      if (cur >= iv.b) break;
    }
    if (cur < iv.b) out.emplace_back(cur, iv.b);
  }
  IntervalSet res;
  res.ivs_ = std::move(out);
  return res;
}

IntervalSet IntervalSet::complement(const Interval& ambient) const {
  IntervalSet amb;
  amb.ivs_.push_back(ambient);
  if (!diff(amb).is_empty()) throw std::invalid_argument("complement: set not inside ambient");
  return amb.diff(*this);
}

IntervalSet IntervalSet::translate(const Rational& offset) const {
  IntervalSet out;
  for (const auto& iv : ivs_) out.ivs_.emplace_back(iv.a + offset, iv.b + offset);
  return out;
}

bool IntervalSet::operator==(const IntervalSet& o) const {
  if (ivs_.size() != o.ivs_.size()) return false;
  for (size_t i = 0; i < ivs_.size(); ++i)
    if (ivs_[i].a != o.ivs_[i].a || ivs_[i].b != o.ivs_[i].b) return false;
  return true;
}

LabeledPartition::LabeledPartition(Interval amb, std::vector<std::pair<std::string, IntervalSet>> a)
    : ambient(std::move(amb)), atoms(std::move(a)) {}

void LabeledPartition::validate() const {
  IntervalSet acc;
  Rational total = 0;
  for (const auto& [label, set] : atoms) {
    if (!acc.intersect(set).is_empty())
      throw std::invalid_argument("partition: atoms overlap at \"" + label + "\"");
    acc = acc.unite(set);
    total += set.measure();
  }
  IntervalSet amb = IntervalSet::single(ambient.a, ambient.b);
  if (!(acc == amb) || total != ambient.length())
    throw std::invalid_argument("partition: atoms do not cover the ambient interval");
}

LabeledPartition join(const LabeledPartition& P, const LabeledPartition& Q) {
  if (P.ambient.a != Q.ambient.a || P.ambient.b != Q.ambient.b)
    throw std::invalid_argument("join: ambient mismatch");
  std::vector<std::pair<std::string, IntervalSet>> atoms;
  for (const auto& [lp, sp] : P.atoms) {
    for (const auto& [lq, sq] : Q.atoms) {
      IntervalSet inter = sp.intersect(sq);
      if (!inter.is_empty()) atoms.emplace_back(lp + "|" + lq, std::move(inter));
    }
  }
  return {P.ambient, std::move(atoms)};
}

PiecewiseTranslation::PiecewiseTranslation(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  std::sort(pieces_.begin(), pieces_.end(),
            [](const Piece& x, const Piece& y) { return x.source.a < y.source.a; });
  for (size_t i = 1; i < pieces_.size(); ++i)
    if (pieces_[i].source.a < pieces_[i - 1].source.b)
      throw std::invalid_argument("PiecewiseTranslation: sources overlap");
  // Image disjointness is part of measure preservation; check it exactly.
  std::vector<Interval> images;
  images.reserve(pieces_.size());
  for (const auto& p : pieces_) images.emplace_back(p.source.a + p.offset, p.source.b + p.offset);
  std::sort(images.begin(), images.end(), [](const Interval& x, const Interval& y) { return x.a < y.a; });
  for (size_t i = 1; i < images.size(); ++i)
    if (images[i].a < images[i - 1].b)
      throw std::invalid_argument("PiecewiseTranslation: images overlap");
}

IntervalSet PiecewiseTranslation::domain() const {
  std::vector<Interval> ivs;
  ivs.reserve(pieces_.size());
  for (const auto& p : pieces_) ivs.push_back(p.source);
  return IntervalSet::canonicalize(std::move(ivs));
}

IntervalSet PiecewiseTranslation::range() const {
  std::vector<Interval> ivs;
  ivs.reserve(pieces_.size());
  for (const auto& p : pieces_) ivs.emplace_back(p.source.a + p.offset, p.source.b + p.offset);
  return IntervalSet::canonicalize(std::move(ivs));
}

Rational PiecewiseTranslation::total_length() const {
  Rational t = 0;
  for (const auto& p : pieces_) t += p.source.length();
  return t;
}

MapResult PiecewiseTranslation::map_set(const IntervalSet& S, MapDirection dir) const {
  std::vector<Interval> mapped;
  for (const auto& p : pieces_) {
    Interval src = dir == MapDirection::Image
                       ? p.source
                       : Interval(p.source.a + p.offset, p.source.b + p.offset);
    Rational shift = dir == MapDirection::Image ? p.offset : -p.offset;
    IntervalSet hit = S.intersect(IntervalSet::single(src.a, src.b));
    for (const auto& iv : hit.intervals()) mapped.emplace_back(iv.a + shift, iv.b + shift);
  }
  MapResult res;
  res.mapped = IntervalSet::canonicalize(std::move(mapped));
  IntervalSet covered = dir == MapDirection::Image ? domain() : range();
  res.uncovered = S.diff(covered);
  return res;
}

bool PiecewiseTranslation::extended_by(const PiecewiseTranslation& o) const {
  for (const auto& p : pieces_) {
    IntervalSet src = IntervalSet::single(p.source.a, p.source.b);
    MapResult mine = map_set(src, MapDirection::Image);
    MapResult theirs = o.map_set(src, MapDirection::Image);
    if (!theirs.uncovered.is_empty()) return false;
    if (!(mine.mapped == theirs.mapped)) return false;
  }
  return true;
}

}  // namespace gentropy
