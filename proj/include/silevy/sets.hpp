#pragma once

#include <vector>

#include "silevy/domain.hpp"

namespace silevy {

// An element of the indexing collection: either the empty set or the atom
// A(t) = { s : s <= t }, held by its tip (TIP bijection).  A(0_T) plays the
// role of the global minimum, usually written with a prime.
struct IndexSet {
  enum class Kind { Empty, Atom };
  Kind kind = Kind::Empty;
  Point tip;

  static IndexSet empty() { return IndexSet{}; }
  static IndexSet atom(const Point& t) { return IndexSet{Kind::Atom, t}; }
  bool is_empty() const { return kind == Kind::Empty; }
};

bool set_contains(const Domain& d, const IndexSet& a, const Point& s);
bool subset(const Domain& d, const IndexSet& a, const IndexSet& b);
bool set_eq(const Domain& d, const IndexSet& a, const IndexSet& b);
IndexSet intersect(const Domain& d, const IndexSet& a, const IndexSet& b);

// C = a0 \ (subtracted[0] u ... u subtracted[k-1]) in canonical extremal
// representation: every member is a strict subset of a0, members are pairwise
// incomparable and sorted by lexicographic tip order.  The empty point set is
// canonically {a0 = Empty, subtracted = {}}.
struct IncrementSet {
  IndexSet a0;
  std::vector<IndexSet> subtracted;

  static IncrementSet of(const IndexSet& a) { return IncrementSet{a, {}}; }
};

IncrementSet extremal_rep(const Domain& d, const IndexSet& a0, std::vector<IndexSet> parts);
bool increment_contains(const Domain& d, const IncrementSet& c, const Point& s);
bool increment_eq(const Domain& d, const IncrementSet& a, const IncrementSet& b);
bool increment_is_empty_set(const IncrementSet& c);

// Exact emptiness test for the intersection of two canonical increment sets.
// Uses the down-set property: A(w) is covered by a union of atoms iff w lies
// in one of them.
bool increments_intersect(const Domain& d, const IncrementSet& a, const IncrementSet& b);

}  // namespace silevy
