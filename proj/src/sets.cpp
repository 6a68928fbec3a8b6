#include "silevy/sets.hpp"

#include <algorithm>

namespace silevy {

bool set_contains(const Domain& d, const IndexSet& a, const Point& s) {
  if (a.is_empty()) return false;
  return d.leq(s, a.tip);
}

bool subset(const Domain& d, const IndexSet& a, const IndexSet& b) {
  if (a.is_empty()) return true;
  if (b.is_empty()) return false;
  return d.leq(a.tip, b.tip);
}

bool set_eq(const Domain& d, const IndexSet& a, const IndexSet& b) {
  if (a.is_empty() || b.is_empty()) return a.is_empty() == b.is_empty();
  return d.tip_eq(a.tip, b.tip);
}

IndexSet intersect(const Domain& d, const IndexSet& a, const IndexSet& b) {
  if (a.is_empty() || b.is_empty()) return IndexSet::empty();
  return IndexSet::atom(d.meet(a.tip, b.tip));
}

IncrementSet extremal_rep(const Domain& d, const IndexSet& a0, std::vector<IndexSet> parts) {
  if (a0.is_empty()) return IncrementSet{IndexSet::empty(), {}};
  std::vector<IndexSet> clipped;
  clipped.reserve(parts.size());
  for (const auto& p : parts) {
    IndexSet q = intersect(d, p, a0);
    if (q.is_empty()) continue;  // empty parts do not remove anything
    if (set_eq(d, q, a0)) return IncrementSet{IndexSet::empty(), {}};  // C is empty as a point set
    clipped.push_back(q);
  }
  // Keep maximal members only, drop duplicates.
  std::vector<IndexSet> maximal;
  for (std::size_t i = 0; i < clipped.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < clipped.size() && !dominated; ++j) {
      if (i == j) continue;
      if (subset(d, clipped[i], clipped[j])) {
        if (!set_eq(d, clipped[i], clipped[j]) || j < i) dominated = true;
      }
    }
    if (!dominated) maximal.push_back(clipped[i]);
  }
  std::sort(maximal.begin(), maximal.end(),
            [&d](const IndexSet& a, const IndexSet& b) { return d.tip_less(a.tip, b.tip); });
  return IncrementSet{a0, std::move(maximal)};
}

bool increment_contains(const Domain& d, const IncrementSet& c, const Point& s) {
  if (!set_contains(d, c.a0, s)) return false;
  for (const auto& a : c.subtracted)
    if (set_contains(d, a, s)) return false;
  return true;
}

bool increment_eq(const Domain& d, const IncrementSet& a, const IncrementSet& b) {
  if (!set_eq(d, a.a0, b.a0)) return false;
  if (a.subtracted.size() != b.subtracted.size()) return false;
  for (std::size_t i = 0; i < a.subtracted.size(); ++i)
    if (!set_eq(d, a.subtracted[i], b.subtracted[i])) return false;
  return true;
}

bool increment_is_empty_set(const IncrementSet& c) { return c.a0.is_empty(); }

bool increments_intersect(const Domain& d, const IncrementSet& a, const IncrementSet& b) {
  if (increment_is_empty_set(a) || increment_is_empty_set(b)) return false;
  const IndexSet w = intersect(d, a.a0, b.a0);
  if (w.is_empty()) return false;
  for (const auto& u : a.subtracted)
    if (set_contains(d, u, w.tip)) return false;
  for (const auto& u : b.subtracted)
    if (set_contains(d, u, w.tip)) return false;
  return true;
}

}  // namespace silevy
