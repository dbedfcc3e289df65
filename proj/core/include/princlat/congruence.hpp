#pragma once

// Lattice congruences: generation by closure, containment, and the ordered
// set of principal congruences.

#include <span>
#include <vector>

#include "princlat/lattice.hpp"
#include "princlat/order.hpp"

namespace princlat {

/// Equivalence relation on lattice elements. Block ids are canonical: every
/// element maps to the least element index of its block.
class Partition {
 public:
  Partition() = default;

  static Partition identity(std::size_t n);
  static Partition full(std::size_t n);
  /// Canonicalises an arbitrary block-label vector.
  static Partition from_labels(std::span<const Index> labels);

  std::size_t size() const noexcept { return block_.size(); }
  Index block_of(Index x) const noexcept { return block_[x]; }
  bool same_block(Index x, Index y) const noexcept { return block_[x] == block_[y]; }
  std::size_t block_count() const noexcept;
  bool is_identity() const noexcept { return block_count() == size(); }
  bool is_full() const noexcept { return block_count() == 1; }

  /// Blocks as ascending index lists, ordered by least member.
  std::vector<std::vector<Index>> blocks() const;
  const std::vector<Index>& canonical() const noexcept { return block_; }

  /// Every block of *this lies inside a block of `other`.
  bool refines(const Partition& other) const noexcept;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<Index> block_;
};

/// Least congruence collapsing a and b.
Partition cg(const FiniteLattice& l, Index a, Index b);

/// Least congruence containing every pair in `pairs`.
Partition con_gen(const FiniteLattice& l, std::span<const OrderedPair> pairs);

bool is_congruence(const FiniteLattice& l, const Partition& p);

/// Principal congruences ordered by containment.
struct PrincPoset {
  std::vector<Partition> congruences;
  /// A generating ordered pair for each congruence (first in lexicographic order).
  std::vector<OrderedPair> generators;
  Poset order;
  /// ordered_pairs(l) in lexicographic order, and the congruence of each.
  std::vector<OrderedPair> pairs;
  std::vector<Index> pair_class;

  /// Index of cg(lo, hi) among `congruences`; lo <= hi required.
  Index class_of(Index lo, Index hi) const;

 private:
  friend PrincPoset princ(const FiniteLattice& l);
  std::size_t n_ = 0;
  std::vector<Index> lookup_;  // n*n, -1 for non-ordered pairs
};

/// Every cg(x, y) over ordered pairs, deduplicated. Congruences are numbered
/// by the first ordered pair generating them, so cg(x, x) = Δ is number 0.
PrincPoset princ(const FiniteLattice& l);

/// (x1, y1) and (x2, y2) are perspective: x_i = y_i ∧ x_j and y_j = x_j ∨ y_i
/// for some {i, j} = {1, 2}.
bool perspective(const FiniteLattice& l, OrderedPair p1, OrderedPair p2);

/// Decides p1 ∈ cg(p2) without computing any congruence: collects every
/// ordered pair weakly projective into p2 by breadth-first search over
/// single weak up/down perspectivity steps, then looks for a chain from
/// p1.lo to p1.hi made of such pairs.
bool projectivity_oracle(const FiniteLattice& l, OrderedPair p1, OrderedPair p2);

}  // namespace princlat
